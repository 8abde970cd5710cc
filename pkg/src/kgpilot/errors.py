"""Exception types shared across the package.

Degeneracies of the guidance laws are reported through these rather than
NaN propagation: a node (|phi| = 0) has no phase, an S0 zero is a genuine
pole of the de Broglie three-velocity, and the stress-tensor flow can lose
its real time-like eigenvector. Each error carries the space-time location
where the condition was detected, when one is known.
"""

from __future__ import annotations


class KgpilotError(Exception):
    """Base class for all package-specific errors."""


class LocatedError(KgpilotError):
    """Error tied to a space-time point (x, t)."""

    def __init__(self, message: str, location: tuple[float, float] | None = None):
        self.location = location
        if location is not None:
            message = f"{message} at (x={location[0]!r}, t={location[1]!r})"
        super().__init__(message)


class NearNodeError(LocatedError):
    """Amplitude below the node tolerance; phase quantities undefined."""


class PoleError(LocatedError):
    """S0 vanishes: the three-velocity has a pole here."""


class UndefinedThetaError(LocatedError):
    """P.S = 0, so the hyperbolic angle between P and S is undefined."""


class DegenerateFlowError(LocatedError):
    """No real time-like eigenvector of the stress tensor at this point."""


class ConstraintViolationError(KgpilotError):
    """A dynamical constraint (mass shell, dyad orthonormality) failed."""
