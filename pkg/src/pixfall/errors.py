"""Exception types shared across the pixfall package."""


class PixfallError(Exception):
    """Base class for all pixfall errors."""


class EmptyInput(PixfallError):
    """Raised when text to pretokenize is empty or whitespace-only."""


class GlyphMissing(PixfallError):
    """Raised when the embedded font has no glyph for a codepoint."""

    def __init__(self, codepoint: int):
        self.codepoint = codepoint
        super().__init__(f"no embedded glyph for U+{codepoint:04X}")


class BackendError(PixfallError):
    """Raised when a system font backend fails to rasterize."""


class SequenceTooLong(PixfallError):
    """Raised when a patch or byte sequence exceeds its length cap."""

    def __init__(self, actual: int, limit: int):
        self.actual = actual
        self.limit = limit
        super().__init__(f"sequence length {actual} exceeds limit {limit}")


class PositionOverflow(PixfallError):
    """Raised when a positional index exceeds the positional table."""


class NumericalError(PixfallError):
    """Raised on non-finite activations or loss values."""


class UnknownToken(PixfallError):
    """Raised for token ids outside the vocabulary."""


class InvalidTarget(PixfallError):
    """Raised when a BPE target size cannot exceed the byte alphabet."""


class EmptyLossMask(PixfallError):
    """Raised when a loss mask selects no positions."""


class EmptyReference(PixfallError):
    """Raised when a chrF++ reference string is empty."""


class EmptyCorpus(PixfallError):
    """Raised when a corpus contains no countable words."""


class ShapeError(PixfallError):
    """Raised on incompatible tensor dimensions."""


class EmptyAlignment(PixfallError):
    """Raised when an alignment batch contains no pairs."""


class InvalidStep(PixfallError):
    """Raised when a schedule step lies outside [0, total_steps]."""


class DegenerateColumn(PixfallError):
    """Raised when a weight-decomposed column has zero norm."""


class DivergenceError(PixfallError):
    """Raised when training loss becomes non-finite."""

    def __init__(self, step: int, checkpoint_path=None):
        self.step = step
        self.checkpoint_path = checkpoint_path
        where = f", last good checkpoint at {checkpoint_path}" if checkpoint_path else ""
        super().__init__(f"training diverged at step {step}{where}")


class MissingTab(PixfallError):
    """Raised for a corpus line without a TAB separator."""

    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line}: no TAB separator")


class EmptyField(PixfallError):
    """Raised for a corpus line with an empty source or target."""

    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line}: empty source or target field")
