"""Exception types shared across the package."""


class KnotFieldError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(KnotFieldError):
    """A constructor or operation received an out-of-range parameter."""


class CapacityExceededError(KnotFieldError):
    """An exact-conditional field hit its conditioning-set cap.

    Callers should switch to a spectral-feature sampler for workloads
    that query the field at this many points.
    """


class NumericalDegeneracyError(KnotFieldError):
    """Conditional variance fell below the tolerated negative slack."""


class SizeMismatchError(KnotFieldError):
    """Two empirical measures with different atom counts were compared."""


class ShapeMismatchError(KnotFieldError):
    """Sample ensembles with incompatible shapes were compared."""


class DegenerateSegmentError(KnotFieldError):
    """A polygon has consecutive vertices that coincide."""


class InvalidGridError(KnotFieldError):
    """A time grid is not strictly increasing from zero."""


class StepExplosionError(KnotFieldError):
    """An SDE sample left the sanity box, signalling instability."""


class InvalidIntervalError(KnotFieldError):
    """Integration interval endpoints are not ordered 0 <= a < b < c < d < 2*pi."""


class DegenerateProjectionError(KnotFieldError):
    """A projection direction failed a genericity test; resample it."""


class NoGenericProjectionError(KnotFieldError):
    """All attempted projection directions were degenerate."""


class InconsistentDiagramError(KnotFieldError):
    """A crossing diagram violates its structural invariants."""


class ConfigError(KnotFieldError):
    """An experiment config failed to parse or validate."""
