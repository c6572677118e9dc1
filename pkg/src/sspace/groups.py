"""Matrix Lie groups, products of them, and the few group operations we need.

Group elements are square ndarrays; elements of product groups are tuples
of square ndarrays, one per factor.  Algebra elements use the same layout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, DiffConfig
from .errors import BadSignature, MembershipViolation, SamplerExhausted
from .geometry import Manifold
from .numerics import matrix_exp

__all__ = [
    "LieGroup",
    "GroupElement",
    "AlgebraElement",
    "exp_curve",
    "adjoint",
    "random_element",
    "random_algebra_element",
    "general_linear",
    "orthogonal",
    "special_orthogonal",
    "circle",
    "sign_group",
    "trivial_group",
    "block_group",
    "invariant_subspace_group",
    "product_group",
    "group_manifold",
]

Value = "np.ndarray | tuple[np.ndarray, ...]"


@dataclass(frozen=True, eq=False)
class LieGroup:
    """A matrix Lie group (or finite product of them).

    component_sizes lists the matrix size of each factor; a simple group
    has a single component and plain ndarray values.
    """

    name: str
    dim: int
    component_sizes: tuple[int, ...]
    identity: "np.ndarray | tuple"
    mul: Callable
    inv: Callable
    algebra_basis: tuple
    sampler: Callable[[np.random.Generator], "np.ndarray | tuple"]
    membership: Callable[["np.ndarray | tuple", float], bool]

    # -- structure helpers -------------------------------------------------

    @property
    def is_product(self) -> bool:
        return isinstance(self.identity, tuple)

    def components(self, value):
        return value if isinstance(value, tuple) else (value,)

    def from_components(self, comps: Sequence[np.ndarray]):
        return tuple(comps) if self.is_product else comps[0]

    def flatten(self, value) -> np.ndarray:
        return np.concatenate([np.asarray(c, dtype=float).ravel() for c in self.components(value)])

    def unflatten(self, vec: np.ndarray):
        comps, at = [], 0
        for n in self.component_sizes:
            comps.append(np.asarray(vec[at : at + n * n], dtype=float).reshape(n, n))
            at += n * n
        return self.from_components(comps)

    @property
    def flat_size(self) -> int:
        return sum(n * n for n in self.component_sizes)

    def zero_algebra(self):
        return self.from_components([np.zeros((n, n)) for n in self.component_sizes])

    def exp(self, algebra_value, t: float = 1.0):
        comps = [matrix_exp(t * c) for c in self.components(algebra_value)]
        return self.from_components(comps)

    def __repr__(self) -> str:
        return f"LieGroup({self.name}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: LieGroup
    value: "np.ndarray | tuple"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    group: LieGroup
    value: "np.ndarray | tuple"


def exp_curve(x: AlgebraElement, t: float, cfg: DiffConfig = DEFAULT) -> GroupElement:
    """exp(t X), verified to land in the group."""
    g = x.group
    val = g.exp(x.value, t)
    if not g.membership(val, 1e-6):
        raise MembershipViolation(f"exp curve left {g.name}")
    return GroupElement(g, val)


def adjoint(a: GroupElement, x: AlgebraElement) -> AlgebraElement:
    """Conjugation a X a^-1 on the algebra, componentwise."""
    g = a.group
    inv = g.inv(a.value)
    comps = [
        ac @ xc @ ic
        for ac, xc, ic in zip(g.components(a.value), g.components(x.value), g.components(inv))
    ]
    return AlgebraElement(g, g.from_components(comps))


def random_element(g: LieGroup, rng: np.random.Generator) -> GroupElement:
    return GroupElement(g, g.sampler(rng))


def random_algebra_element(
    g: LieGroup, rng: np.random.Generator, scale: float = 1.0
) -> AlgebraElement:
    """A random combination of the algebra basis (zero for discrete groups)."""
    if not g.algebra_basis:
        return AlgebraElement(g, g.zero_algebra())
    coeffs = rng.normal(0.0, scale, size=len(g.algebra_basis))
    comps = [np.zeros((n, n)) for n in g.component_sizes]
    for c, basis_el in zip(coeffs, g.algebra_basis):
        for i, bc in enumerate(g.components(basis_el)):
            comps[i] = comps[i] + c * bc
    return AlgebraElement(g, g.from_components(comps))


# ---------------------------------------------------------------------------
# Concrete groups


def _finite_and(pred):
    def member(a, tol: float = 1e-6) -> bool:
        arr = np.asarray(a, dtype=float)
        return bool(np.all(np.isfinite(arr))) and pred(arr, tol)

    return member


def general_linear(n: int, min_det: float = 1e-3) -> LieGroup:
    """GL(n): invertible n x n matrices."""
    basis = tuple(
        np.eye(n)[:, [i]] @ np.eye(n)[[j], :] for i in range(n) for j in range(n)
    )

    def sampler(rng: np.random.Generator) -> np.ndarray:
        for _ in range(100):
            a = rng.normal(0.0, 1.0, size=(n, n))
            if abs(np.linalg.det(a)) >= 0.2:
                return a
        raise SamplerExhausted("GL sampler kept drawing near-singular matrices")

    return LieGroup(
        name=f"GL({n})",
        dim=n * n,
        component_sizes=(n,),
        identity=np.eye(n),
        mul=lambda a, b: a @ b,
        inv=np.linalg.inv,
        algebra_basis=basis,
        sampler=sampler,
        membership=_finite_and(lambda a, tol: abs(np.linalg.det(a)) > min_det),
    )


def _skew_basis(n: int) -> tuple[np.ndarray, ...]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            m[i, j], m[j, i] = 1.0, -1.0
            out.append(m)
    return tuple(out)


def orthogonal(n: int) -> LieGroup:
    """O(n), sampling both components."""

    def sampler(rng: np.random.Generator) -> np.ndarray:
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        q = q @ np.diag(np.sign(np.diag(r)))
        if n >= 1 and rng.random() < 0.5:
            q = q.copy()
            q[:, 0] = -q[:, 0]
        return q

    return LieGroup(
        name=f"O({n})",
        dim=n * (n - 1) // 2,
        component_sizes=(n,),
        identity=np.eye(n),
        mul=lambda a, b: a @ b,
        inv=lambda a: a.T.copy(),
        algebra_basis=_skew_basis(n),
        sampler=sampler,
        membership=_finite_and(lambda a, tol: np.linalg.norm(a.T @ a - np.eye(n)) <= 100 * tol),
    )


def special_orthogonal(n: int) -> LieGroup:
    """SO(n): rotations."""

    def sampler(rng: np.random.Generator) -> np.ndarray:
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        q = q @ np.diag(np.sign(np.diag(r)))
        if np.linalg.det(q) < 0:
            q = q.copy()
            q[:, [0, 1]] = q[:, [1, 0]]
        return q

    def member(a, tol: float = 1e-6) -> bool:
        arr = np.asarray(a, dtype=float)
        return (
            bool(np.all(np.isfinite(arr)))
            and np.linalg.norm(arr.T @ arr - np.eye(n)) <= 100 * tol
            and np.linalg.det(arr) > 0
        )

    return LieGroup(
        name=f"SO({n})",
        dim=n * (n - 1) // 2,
        component_sizes=(n,),
        identity=np.eye(n),
        mul=lambda a, b: a @ b,
        inv=lambda a: a.T.copy(),
        algebra_basis=_skew_basis(n),
        sampler=sampler,
        membership=member,
    )


def circle() -> LieGroup:
    g = special_orthogonal(2)
    return LieGroup(
        name="U(1)",
        dim=1,
        component_sizes=(2,),
        identity=g.identity,
        mul=g.mul,
        inv=g.inv,
        algebra_basis=g.algebra_basis,
        sampler=g.sampler,
        membership=g.membership,
    )


def sign_group() -> LieGroup:
    """O(1) = {+1, -1} as 1 x 1 matrices."""
    return LieGroup(
        name="O(1)",
        dim=0,
        component_sizes=(1,),
        identity=np.eye(1),
        mul=lambda a, b: a @ b,
        inv=lambda a: a.copy(),
        algebra_basis=(),
        sampler=lambda rng: np.array([[1.0 if rng.random() < 0.5 else -1.0]]),
        membership=_finite_and(lambda a, tol: abs(abs(float(a[0, 0])) - 1.0) <= 100 * tol),
    )


def trivial_group() -> LieGroup:
    """The one-element group, as 1 x 1 identity matrices."""
    return LieGroup(
        name="{1}",
        dim=0,
        component_sizes=(1,),
        identity=np.eye(1),
        mul=lambda a, b: np.eye(1),
        inv=lambda a: np.eye(1),
        algebra_basis=(),
        sampler=lambda rng: np.eye(1),
        membership=_finite_and(lambda a, tol: abs(float(a[0, 0]) - 1.0) <= 100 * tol),
    )


def block_group(s: int, r: int, n: int) -> LieGroup:
    """Block-diagonal group diag(O(s), O(r-s), GL(n-r)) inside GL(n).

    Elements preserve the normal form diag(I_s, -I_(r-s), 0) under
    congruence.  Raises BadSignature unless 0 <= s <= r <= n.
    """
    if not (0 <= s <= r <= n):
        raise BadSignature(f"need 0 <= s <= r <= n, got s={s}, r={r}, n={n}")
    o1, o2, gl = orthogonal(s), orthogonal(r - s), general_linear(n - r)
    pieces = [(o1, 0, s), (o2, s, r), (gl, r, n)]

    def embed(m: np.ndarray, a: int, b: int) -> np.ndarray:
        out = np.zeros((n, n))
        out[a:b, a:b] = m
        return out

    basis = tuple(
        embed(x, a, b) for grp, a, b in pieces for x in grp.algebra_basis
    )

    def sampler(rng: np.random.Generator) -> np.ndarray:
        out = np.eye(n)
        for grp, a, b in pieces:
            if b > a:
                out[a:b, a:b] = grp.sampler(rng)
        return out

    def member(m, tol: float = 1e-6) -> bool:
        arr = np.asarray(m, dtype=float)
        if not np.all(np.isfinite(arr)):
            return False
        mask = np.ones((n, n), dtype=bool)
        for _, a, b in pieces:
            mask[a:b, a:b] = False
        if np.any(np.abs(arr[mask]) > 100 * tol):
            return False
        return all(
            b == a or grp.membership(arr[a:b, a:b], tol) for grp, a, b in pieces
        )

    return LieGroup(
        name=f"O({s}) x O({r - s}) x GL({n - r})",
        dim=o1.dim + o2.dim + gl.dim,
        component_sizes=(n,),
        identity=np.eye(n),
        mul=lambda a, b: a @ b,
        inv=np.linalg.inv,
        algebra_basis=basis,
        sampler=sampler,
        membership=member,
    )


def invariant_subspace_group(k: int, n: int) -> LieGroup:
    """Invertible matrices whose right action preserves span(first k coordinates).

    With row vectors acting by v -> v A, the invariance forces the upper
    right k x (n-k) block to vanish.
    """
    if not 0 < k < n:
        raise BadSignature(f"need 0 < k < n, got k={k}, n={n}")
    basis = tuple(
        np.eye(n)[:, [i]] @ np.eye(n)[[j], :]
        for i in range(n)
        for j in range(n)
        if not (i < k <= j)
    )

    def sampler(rng: np.random.Generator) -> np.ndarray:
        for _ in range(100):
            a = rng.normal(size=(n, n))
            a[:k, k:] = 0.0
            if abs(np.linalg.det(a)) >= 0.05:
                return a
        raise SamplerExhausted("invariant-subspace sampler exhausted")

    def member(m, tol: float = 1e-6) -> bool:
        arr = np.asarray(m, dtype=float)
        return (
            bool(np.all(np.isfinite(arr)))
            and np.all(np.abs(arr[:k, k:]) <= 100 * tol)
            and abs(np.linalg.det(arr)) > 1e-3
        )

    return LieGroup(
        name=f"GL({n};{k})",
        dim=n * n - k * (n - k),
        component_sizes=(n,),
        identity=np.eye(n),
        mul=lambda a, b: a @ b,
        inv=np.linalg.inv,
        algebra_basis=basis,
        sampler=sampler,
        membership=member,
    )


def product_group(factors: Sequence[LieGroup], name: str | None = None) -> LieGroup:
    """Direct product; elements are tuples with one matrix per factor."""
    for f in factors:
        if f.is_product:
            raise ValueError("nest products by flattening the factor list")
    sizes = tuple(itertools.chain.from_iterable(f.component_sizes for f in factors))
    identity = tuple(f.identity for f in factors)

    def mul(a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(factors, a, b))

    def inv(a):
        return tuple(f.inv(x) for f, x in zip(factors, a))

    basis = []
    for i, f in enumerate(factors):
        for x in f.algebra_basis:
            basis.append(
                tuple(
                    x if j == i else np.zeros((g.component_sizes[0],) * 2)
                    for j, g in enumerate(factors)
                )
            )

    def sampler(rng: np.random.Generator):
        return tuple(f.sampler(rng) for f in factors)

    def member(a, tol: float = 1e-6) -> bool:
        return all(f.membership(x, tol) for f, x in zip(factors, a))

    return LieGroup(
        name=name or " x ".join(f.name for f in factors),
        dim=sum(f.dim for f in factors),
        component_sizes=sizes,
        identity=identity,
        mul=mul,
        inv=inv,
        algebra_basis=tuple(basis),
        sampler=sampler,
        membership=member,
    )


def group_manifold(g: LieGroup, name: str | None = None) -> Manifold:
    """The group as an embedded manifold of flattened matrix coordinates.

    The tangent basis at a is the left translate of the algebra basis;
    for zero-dimensional groups it is empty.
    """
    amb = g.flat_size

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        return g.membership(g.unflatten(x), tol)

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        a = g.unflatten(x)
        rows = np.zeros((g.dim, amb))
        for i, basis_el in enumerate(g.algebra_basis):
            translated = [
                ac @ bc for ac, bc in zip(g.components(a), g.components(basis_el))
            ]
            rows[i] = g.flatten(g.from_components(translated))
        return rows

    def sampler(rng: np.random.Generator) -> np.ndarray:
        return g.flatten(g.sampler(rng))

    return Manifold(name or g.name, g.dim, amb, contains, tangent_basis, sampler)
