"""Exception hierarchy shared across the library."""


class LvError(Exception):
    """Base class for all lvthermo errors."""


class EnergyBelowMinimum(LvError):
    """Requested energy h is at or below the fixed-point energy alpha + 1."""


class PeriodNotFound(LvError):
    """The orbit did not return to the Poincare section within the time cap."""


class StepSizeUnderflow(LvError):
    """The adaptive step controller stalled (pathological tolerance or state)."""


class BoundaryState(LvError):
    """Master-equation residual requested at a boundary state (m < 2 or n < 2)."""


class StepRejectionLimit(LvError):
    """Positivity could not be maintained in the SDE stepper (dt too large)."""


class FixedPointNotFound(LvError):
    """Newton iteration for the drift fixed point failed to converge."""


class SingularCoefficient(LvError):
    """Averaged noise coefficient underflowed at a grid point."""


class DomainLeakWarning(UserWarning):
    """Backward characteristics left the declared domain; conservation
    comparisons on a non-invariant domain are not meaningful."""
