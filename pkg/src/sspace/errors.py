"""Exception taxonomy shared by every module.

Each class corresponds to one contract-violation mode; callers catch the
base class when they only care that a check could not be completed.
"""

from __future__ import annotations


class SSpaceError(Exception):
    """Base class for all package errors."""


class RankDeficient(SSpaceError):
    """A linear system or frame family has lower rank than required."""


class ResidualTooLarge(SSpaceError):
    """A least-squares solve left a residual above tolerance."""


class EvaluationFailure(SSpaceError):
    """A user-supplied callable rejected a probe point or returned non-finite data."""


class TangencyViolation(SSpaceError):
    """A vector expected to be tangent has a large normal component."""


class MembershipViolation(SSpaceError):
    """A value is not a member of the group or manifold it was claimed to be in."""


class SamplerExhausted(SSpaceError):
    """A rejection sampler failed to produce a valid sample."""


class BadSignature(SSpaceError):
    """Signature parameters (s, r, n) are inconsistent."""


class InvarianceViolation(SSpaceError):
    """A matrix map fails the equivariance law required of tensor representations."""


class Singular(SSpaceError):
    """A matrix expected to be invertible is numerically singular."""


class RigidityLost(SSpaceError):
    """A frame change destroyed the base-change structure of a frame space."""


class NotATensor(SSpaceError):
    """An iterated pullback stopped corresponding to any tensor field."""

    def __init__(self, iteration: int, message: str = ""):
        self.iteration = iteration
        super().__init__(message or f"iterate {iteration} does not come from a tensor")


class SplittingFailure(SSpaceError):
    """A candidate horizontal space fails to complement the vertical space."""


class SignatureMismatch(SSpaceError):
    """A sampled point has a different tensor signature than expected."""


class MissingFiberSplit(SSpaceError):
    """The operation needs a fiber split and the space does not declare one."""


class UnknownInstance(SSpaceError):
    """No catalog entry with the requested name."""


class UnknownSuite(SSpaceError):
    """No check suite with the requested name."""
