"""Worked instances bundled with the library.

Each entry packages a frame space (or family) with named randomized
checks; ``registry()`` returns them in a stable order keyed by name.
"""

from __future__ import annotations

from ..errors import UnknownInstance, UnknownSuite
from .base import CatalogEntry, Check, RunContext, stable_seed
from . import flat, frames, hopf, liegroups, tangent

_ORDER = (
    "lm-flat-2",
    "oframes-flat-2",
    "punctured-2",
    "tangent-flat-2",
    "tangent-sphere2",
    "unit-tangent-sphere2",
    "frame-conn-2",
    "liegroup-pair-so3",
    "liegroup-bases-so3",
    "liegroup-ortho-so3",
    "hopf",
    "hopf-frame-algebra",
    "minkowski-p51",
)


def registry() -> dict[str, CatalogEntry]:
    entries = {}
    for mod in (flat, tangent, frames, liegroups, hopf):
        for entry in mod.entries():
            entries[entry.name] = entry
    missing = [n for n in _ORDER if n not in entries]
    extra = [n for n in entries if n not in _ORDER]
    if missing or extra:
        raise RuntimeError(f"catalog registry out of sync: missing {missing}, extra {extra}")
    return {name: entries[name] for name in _ORDER}


def get_entry(name: str) -> CatalogEntry:
    reg = registry()
    if name not in reg:
        raise UnknownInstance(f"unknown instance {name!r}; known: {', '.join(reg)}")
    return reg[name]


__all__ = [
    "CatalogEntry",
    "Check",
    "RunContext",
    "UnknownInstance",
    "UnknownSuite",
    "get_entry",
    "registry",
    "stable_seed",
]
