"""Exception types shared across the package.

Every error raised by this package derives from :class:`BranchEmbedError`,
so callers can catch one base class at an application boundary.  Structural
errors additionally derive from :class:`ValueError` (or :class:`OSError`
for file problems) to stay friendly to generic handling.
"""


class BranchEmbedError(Exception):
    """Base class for all errors raised by this package."""


class DendrogramError(BranchEmbedError, ValueError):
    """An invalid merge table.

    ``record`` is the 0-based index of the offending merge record when the
    problem is attributable to a single record, else ``None``.
    """

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class DuplicateChild(DendrogramError):
    """A node is referenced as a child more than once."""


class ForwardReference(DendrogramError):
    """A record references a node id that does not exist yet."""


class SizeMismatch(DendrogramError):
    """A declared size disagrees with the sizes it should be derived from."""


class NonMonotonic(DendrogramError):
    """A merge height is lower than the height of one of its children."""


class NegativeHeight(DendrogramError):
    """A merge height is negative."""


class ZeroVarianceRow(BranchEmbedError, ValueError):
    """A data row is constant, so row correlation is undefined.

    ``row`` is the 0-based index of the first such row.
    """

    def __init__(self, row):
        super().__init__(f"row {row} has zero variance")
        self.row = row


class ZeroVariance(BranchEmbedError, ValueError):
    """A value vector is constant, so Pearson correlation is undefined."""


class ConstantColumn(BranchEmbedError, ValueError):
    """A data column is constant, so min-max rescaling is undefined.

    ``column`` is the 0-based index of the first such column.
    """

    def __init__(self, column):
        super().__init__(f"column {column} is constant")
        self.column = column


class ParseError(BranchEmbedError, ValueError):
    """A text record could not be parsed.

    ``line`` is the 1-based line number within the input.
    """

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RaggedRow(ParseError):
    """A CSV row has a different width than the first row."""


class IoError(BranchEmbedError, OSError):
    """A file could not be read.  ``path`` is the offending path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = str(path)
