"""Exception types shared across the glyphfuzz package."""


class GlyphfuzzError(Exception):
    """Base class for all glyphfuzz errors."""


class MalformedHeader(GlyphfuzzError):
    """Netpbm header is unusable: bad magic number or nonpositive dimensions."""


class TruncatedPixelData(GlyphfuzzError):
    """Netpbm raster ended before width*height samples were read."""


class UnsupportedMaxval(GlyphfuzzError):
    """Netpbm maxval exceeds 65535."""


class EmptyGlyph(GlyphfuzzError):
    """Image contains no foreground pixels, so there is no glyph to process."""


class UnknownVariable(GlyphfuzzError):
    """A rule or input refers to a variable the inference system does not define."""


class UnknownTerm(GlyphfuzzError):
    """A rule refers to a term label its variable does not define."""


class EmptyAntecedent(GlyphfuzzError):
    """A rule has no antecedent entries, so its strength is undefined."""


class NoRuleFired(GlyphfuzzError):
    """Every rule fired with strength zero; the system cannot classify the input."""


class UnknownLabel(GlyphfuzzError):
    """An evaluation corpus label is not among the model's classes."""


class ModelFormatError(GlyphfuzzError):
    """A model file does not conform to the glyphfuzz-model v1 format."""


class CorpusError(GlyphfuzzError):
    """A corpus directory violates the directory-per-class layout."""
