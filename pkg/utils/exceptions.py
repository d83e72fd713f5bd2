"""Exception hierarchy shared by every lipgroove component."""
from pathlib import Path


class LipGrooveError(Exception):
    """Base class for all lipgroove failures."""


class ConfigError(LipGrooveError, RuntimeError):
    """Settings or hook configuration could not be loaded."""


# -- raster I/O -------------------------------------------------------------

class PnmError(LipGrooveError, ValueError):
    """A PNM byte stream could not be decoded."""


class BadMagicError(PnmError):
    pass


class MaxvalUnsupportedError(PnmError):
    pass


class TruncatedPayloadError(PnmError):
    pass


class InvalidDimensionsError(PnmError):
    pass


class MalformedHeaderError(PnmError):
    pass


class MalformedSampleError(PnmError):
    pass


class RasterTypeError(LipGrooveError, TypeError):
    """A raster of the wrong variant (dtype or rank) was supplied."""


class DimensionMismatchError(LipGrooveError, ValueError):
    pass


# -- filters and edges ------------------------------------------------------

class KernelError(LipGrooveError, ValueError):
    pass


class HysteresisThresholdError(LipGrooveError, ValueError):
    pass


class StageError(LipGrooveError):
    """A pipeline stage failed; carries the stage letter."""

    def __init__(self, label: str, cause: Exception):
        self.label = label
        self.cause = cause
        super().__init__(f"stage '{label}' failed: {type(cause).__name__}: {cause}")


# -- lip geometry -----------------------------------------------------------

class NoObjectError(LipGrooveError, ValueError):
    pass


class DegenerateLipError(LipGrooveError, ValueError):
    pass


# -- template codec ---------------------------------------------------------

class TemplateFormatError(LipGrooveError, ValueError):
    """A serialized template could not be parsed."""


class TemplateMagicError(TemplateFormatError):
    pass


class UnsupportedVersionError(TemplateFormatError):
    pass


class TemplateDimsError(TemplateFormatError):
    pass


class MalformedHeaderLineError(TemplateFormatError):
    pass


class MalformedMapError(TemplateFormatError):
    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {reason}")


# -- template store ---------------------------------------------------------

class StoreError(LipGrooveError):
    pass


class DuplicateIdError(StoreError):
    pass


class InvalidIdError(StoreError, ValueError):
    pass


class TemplateFileError(StoreError):
    """A stored template file failed to parse; names the file."""

    def __init__(self, path: Path, cause: Exception):
        self.path = Path(path)
        self.cause = cause
        super().__init__(f"{self.path.name}: {cause}")
