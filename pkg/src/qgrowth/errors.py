"""Exception types shared across the package.

The CLI maps these onto exit codes: bad input specs exit with 2,
resource-cap overruns with 3, and failed verification suites with 1.
"""

from __future__ import annotations


class QGrowthError(Exception):
    """Base class for all package errors."""


class SpecError(QGrowthError):
    """Malformed ring spec, generator spec, or input file."""


class UnknownIrrepError(SpecError):
    """An irrep label does not belong to the ring at hand."""

    def __init__(self, label, ring_spec=""):
        self.label = label
        self.ring_spec = ring_spec
        where = f" in ring '{ring_spec}'" if ring_spec else ""
        super().__init__(f"unknown irrep {label!r}{where}")


class RingValidationError(QGrowthError):
    """A structural invariant of a fusion ring failed on load."""


class EnumerationCapError(QGrowthError):
    """An enumeration (ball, closure, tensor power) exceeded its cap."""

    def __init__(self, cap, context=""):
        self.cap = cap
        suffix = f" while {context}" if context else ""
        super().__init__(f"enumeration cap of {cap} irreps exceeded{suffix}")


class TruncationCapError(QGrowthError):
    """A power-series truncation needed more terms than the hard cap allows."""

    def __init__(self, cap, lam, achieved):
        self.cap = cap
        self.lam = lam
        self.achieved = achieved
        super().__init__(
            f"exponential series at lambda={lam} needs more than {cap} terms "
            f"(achieved tail bound {achieved:.3e})"
        )


class IntertwinerError(QGrowthError):
    """Intertwiner solve was numerically rank deficient or inconsistent."""


class QuadratureError(QGrowthError):
    """Quadrature failed to reach the requested accuracy."""

    def __init__(self, requested, achieved):
        self.requested = requested
        self.achieved = achieved
        super().__init__(
            f"quadrature reached {achieved:.3e}, requested {requested:.3e}"
        )


class StrictGrowthError(QGrowthError):
    """The strict-growth constant ratio diverged at the requested exponent."""

    def __init__(self, gamma, c, d, ratio, bound):
        self.gamma = gamma
        self.c = c
        self.d = d
        self.ratio = ratio
        self.bound = bound
        super().__init__(
            f"no strict growth at exponent {gamma}: tail ratio {ratio:.3g} "
            f"exceeds bound {bound:.3g} (c={c:.3g}, d={d:.3g})"
        )
