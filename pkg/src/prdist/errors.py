"""Exception hierarchy shared by all prdist modules.

Everything raised on bad data or bad parameters derives from PrdistError,
so callers (and the CLI) can distinguish data errors from genuine bugs.
"""


class PrdistError(Exception):
    """Base class for all errors raised by prdist."""


class MissingFile(PrdistError, FileNotFoundError):
    """An input file does not exist."""


class MalformedLine(PrdistError):
    """A corpus line is not a valid record."""

    def __init__(self, line_no, reason):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class DuplicateId(PrdistError):
    """Two corpus records share an id."""

    def __init__(self, record_id):
        self.record_id = record_id
        super().__init__(f"duplicate record id: {record_id!r}")


class BadMagic(PrdistError):
    """An embedding file does not start with the EMB1 magic bytes."""


class UnsupportedVersion(PrdistError):
    """An embedding file declares a version this reader does not know."""


class TruncatedPayload(PrdistError):
    """An embedding file is shorter than its header declares."""


class TrailingBytes(PrdistError):
    """An embedding file contains bytes past the declared payload."""


class NonFiniteValue(PrdistError):
    """A loaded matrix contains NaN or infinity."""

    def __init__(self, row, col):
        self.row = row
        self.col = col
        super().__init__(f"non-finite value at row {row}, col {col}")


class IoFailure(PrdistError, OSError):
    """Writing an output file failed."""


class InvalidValue(PrdistError, ValueError):
    """A value violates a type invariant or parameter precondition."""


class DimensionMismatch(PrdistError, ValueError):
    """Two matrices that must share a column count do not."""


class DegenerateData(PrdistError, ValueError):
    """The data carries no usable variance (e.g. all rows identical)."""


class TooFewPoints(PrdistError, ValueError):
    """Not enough points for the requested neighbor count or bin count."""


class InvalidGrid(PrdistError, ValueError):
    """A parameter grid is empty, unsorted, or out of range."""


class TooFewDocs(PrdistError, ValueError):
    """A corpus-level metric needs more documents than were given."""


class PoolTooSmall(PrdistError, ValueError):
    """A sampling pool has fewer rows than the requested subsample."""


class TooFewSeeds(PrdistError, ValueError):
    """A variance report needs at least two seeded runs."""


class ConstantSeries(PrdistError, ValueError):
    """Correlation is undefined for a constant series."""


class LengthMismatch(PrdistError, ValueError):
    """Two paired series have different lengths."""


class InvalidSpec(PrdistError, ValueError):
    """A synthetic mixture specification is inconsistent."""


class EmptyClusterUnrecoverable(PrdistError, RuntimeError):
    """Repeated re-seeding could not fill all empty clusters."""
