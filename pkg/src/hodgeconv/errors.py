"""Exception types shared across the package."""


class InputFormatError(ValueError):
    """Malformed external input (matrix file, config, dataset layout)."""


class TopologyError(ValueError):
    """A simplicial complex violates a structural invariant."""


class UnsupportedDimensionError(ValueError):
    """Requested simplex dimension outside the supported range {0, 1}."""


class ShapeError(ValueError):
    """Operand dimensions do not chain; never silently broadcast."""


class OracleLimitError(RuntimeError):
    """Dense spectral path requested above the configured size limit."""


class PlanError(ValueError):
    """A pooling plan references simplices that do not exist."""


class TapeError(RuntimeError):
    """Backward pass requested without a recorded forward pass."""


class DivergenceError(RuntimeError):
    """Training loss became non-finite."""


class InvalidModelError(ValueError):
    """Model parameters are unusable (non-finite)."""
