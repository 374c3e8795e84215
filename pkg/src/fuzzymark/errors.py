"""Exception types raised by the toolkit."""


class FuzzymarkError(ValueError):
    """Base class for all toolkit errors."""


class DecodeError(FuzzymarkError):
    """File could not be read or decoded as an image."""


class ChannelError(FuzzymarkError):
    """Image has an unexpected channel layout (e.g. grayscale where RGB is required)."""


class DimensionError(FuzzymarkError):
    """Operands have incompatible or unsupported dimensions."""


class ParameterError(FuzzymarkError):
    """A parameter is outside its documented range."""


class StructureError(FuzzymarkError):
    """A composite value (e.g. a subband pyramid) is malformed."""


class DegenerateInputError(FuzzymarkError):
    """Input is degenerate for the requested computation (e.g. zero energy)."""
