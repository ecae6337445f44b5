"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of :class:`MaiclassError`, so the CLI
can map any of them to exit code 1 while usage mistakes stay exit code 2.
"""


class MaiclassError(Exception):
    """Base class for all domain errors raised by this package."""


class IoError(MaiclassError):
    """A file could not be read or written."""


class ParseError(MaiclassError):
    """A record or cell in an input file is malformed."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateId(MaiclassError):
    """Two corpus records share the same id."""

    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id {doc_id!r}")
        self.doc_id = doc_id


class EmptyCorpus(MaiclassError):
    """No documents, or no tokens at all, where at least one is required."""


class ClassTooSmall(MaiclassError):
    """A class has too few documents to be split."""

    def __init__(self, label: str, size: int):
        super().__init__(f"class {label!r} has only {size} document(s); need at least 2")
        self.label = label
        self.size = size


class DegenerateLabels(MaiclassError):
    """Training data contains fewer than two distinct labels."""


class DimensionMismatch(MaiclassError):
    """Vector or matrix dimensions do not agree."""


class LengthMismatch(MaiclassError):
    """Two sequences that must be aligned have different lengths."""


class NumericalFailure(MaiclassError):
    """An oracle or optimizer produced a non-finite value."""


class LineSearchFailure(MaiclassError):
    """No step satisfying the Wolfe conditions could be found."""


class Unsupported(MaiclassError):
    """The requested operation is not available for this model type."""


class RunFailure(MaiclassError):
    """A repeated-evaluation run failed; wraps the original error with its run index."""

    def __init__(self, run: int, cause: Exception):
        super().__init__(f"run {run}: {type(cause).__name__}: {cause}")
        self.run = run


class EmptySample(MaiclassError):
    """A statistical operation received an empty sample."""


class EmptyTable(MaiclassError):
    """An agreement table has no rows or no columns."""


class MissingCell(MaiclassError):
    """The score fixture lacks a required (model, classifier, corpus, MaI) cell."""

    def __init__(self, model: str, classifier: str, corpus: str, mai: str):
        super().__init__(f"missing cell ({model}, {classifier}, {corpus}, {mai})")
        self.key = (model, classifier, corpus, mai)


class RangeError(MaiclassError):
    """A score value lies outside [0, 1]."""


class IncompleteRule(MaiclassError):
    """A selection rule does not cover all twelve classifiers."""
