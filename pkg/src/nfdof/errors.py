"""Exception types shared across the package."""


class DegeneratePoint(ValueError):
    """Observation point coincides with (or touches) the transmit segment."""


class DegenerateGeometry(ValueError):
    """Geometry carries no usable angular extent (subtended angle is zero)."""


class NonIntegerGrid(ValueError):
    """Array length is not an integer multiple of the antenna spacing."""


class CoincidentAntennas(ValueError):
    """A transmit and a receive antenna occupy the same position."""


class InvalidRule(ValueError):
    """Quadrature rule parameters are inconsistent (e.g. even Simpson nodes)."""


class NumericalFailure(RuntimeError):
    """An iterative numerical kernel exhausted its budget without converging."""


class AllZeroSpectrum(ValueError):
    """Singular spectrum is identically zero; the requested functional is undefined."""


class SchemaError(ValueError):
    """Scenario document is malformed; message carries the offending field path."""


class RangeError(ValueError):
    """Scenario field is outside its allowed range; message carries the value."""
