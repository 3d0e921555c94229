"""Exception types shared across the library."""


class SetoptError(Exception):
    """Base class for every error raised by this package."""


class DimMismatch(SetoptError):
    """Row/vector dimensions are inconsistent."""


class IterationCapExceeded(SetoptError):
    """The simplex iteration cap was hit; the input is numerically hard."""


class CapExceeded(SetoptError):
    """An enumeration budget was exhausted; the result was not computed."""


class ParseError(SetoptError):
    """An instance file could not be parsed; message carries diagnostics."""


class ValidationError(SetoptError):
    """Structured data violates an invariant."""


class DuplicateLabel(ValidationError):
    """Two decisions share the same label."""


class EmptyImage(ValidationError):
    """An image set has no points."""


class ConeError(ValidationError):
    """Base class for ordering-cone validation failures."""


class NotPointed(ConeError):
    """The inequality rows do not have full column rank."""


class NotInterior(ConeError):
    """The designated direction is not strictly inside the cone."""


class ZeroRow(ConeError):
    """A cone row is identically zero."""


class WeightNotInDualCone(SetoptError):
    """A scalarization weight lies outside the dual cone."""
