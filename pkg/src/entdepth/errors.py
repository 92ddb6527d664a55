"""Exception types raised across the package."""


class EntDepthError(Exception):
    """Base class for all errors raised by entdepth."""


class LimitError(EntDepthError, ValueError):
    """A size argument (n, qubit count) exceeds a configured cap."""


class RangeError(EntDepthError, ValueError):
    """A generator-function parameter lies outside its monotonicity range."""


class LevelError(EntDepthError, ValueError):
    """A level value is not attained by the generator function."""


class NoNeighborError(EntDepthError, ValueError):
    """The level is already the bottom level; it has no neighbour."""


class InconsistentInputError(EntDepthError, ValueError):
    """Measured or supplied data contradict a hard bound."""


class SchemaError(EntDepthError, ValueError):
    """A JSON document does not match the expected schema."""
