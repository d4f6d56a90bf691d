"""Exception types shared across the package."""


class FlowrankError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FlowrankError, ValueError):
    """An input violates one of its documented invariants."""


class WeightSumError(ValidationError):
    """Criterion weights do not sum to one."""


class NegativeWeightError(ValidationError):
    """A criterion weight is negative."""


class ThresholdOrderError(ValidationError):
    """A threshold triple does not satisfy 0 <= q <= p <= v."""


class LengthMismatchError(ValidationError):
    """Two sequences that must have equal length do not."""


class IndexOutOfRangeError(FlowrankError, IndexError):
    """An alternative or criterion index is outside the matrix."""


class AlphaOutOfRangeError(ValidationError):
    """Smoothing factor outside the half-open interval (0, 1]."""


class NonpositiveDtError(ValidationError):
    """Filter step length must be strictly positive."""


class StepOutOfRangeError(ValidationError):
    """A time step lies outside a scenario's horizon."""


class NotAPermutationError(ValidationError):
    """A ranking does not list each alternative exactly once."""


class DimensionMismatchError(ValidationError):
    """Identification inputs have incompatible shapes."""


class ConsistencyError(FlowrankError):
    """Two redundant computation paths disagree beyond tolerance."""


class DataFormatError(ValidationError):
    """A data file cannot be interpreted in its declared format."""


class ParseError(DataFormatError):
    """Malformed row or field in a text data file."""


class DuplicateIdError(DataFormatError):
    """The same alternative identifier appears twice."""


class EmptyFileError(DataFormatError):
    """A data file contains no usable content."""


class SchemaError(DataFormatError):
    """Structured document missing or mistyping a required field."""
