"""Exception types raised across the package.

Every failure mode that callers are expected to handle gets its own class so
that CLI error reporting can name the failing stage and condition precisely.
"""


class StylusError(Exception):
    """Base class for all package-specific errors."""


# corpus ---------------------------------------------------------------

class MissingPaper(StylusError):
    """An expected document id was not found while parsing the source text."""

    def __init__(self, paper_id):
        self.paper_id = paper_id
        super().__init__(f"paper {paper_id} missing from source text")


class ParseError(StylusError):
    """The source text does not match the expected document layout."""


# bow ------------------------------------------------------------------

class EmptyVocabulary(StylusError):
    """No terms survived filtering; a term-document matrix cannot be built."""


class LabelMismatch(StylusError):
    """Document labels disagree with the expected authorship census."""


# embeddings -----------------------------------------------------------

class InvalidK(StylusError):
    """Topic count must be an integer >= 2 and <= the vocabulary size."""


class RankTooLarge(StylusError):
    """Requested factor rank exceeds what the matrix dimensions allow."""


class DimensionMismatch(StylusError):
    """Operands disagree on a shared dimension."""


class MissingDoc(StylusError):
    """An externally supplied embedding lacks a required document row."""

    def __init__(self, doc_id):
        self.doc_id = doc_id
        super().__init__(f"embedding file has no row for document {doc_id}")


class MalformedRow(StylusError):
    """A row in an external embedding file could not be parsed."""


class NonFiniteValue(StylusError):
    """An external embedding contains NaN or infinite entries."""


# screening ------------------------------------------------------------

class DegenerateTotals(StylusError):
    """Pooled counts leave the allocation test undefined (zero denominator)."""


# classification -------------------------------------------------------

class EmptyInput(StylusError):
    """A classifier was given no rows to fit on."""


class SingleClass(StylusError):
    """A classifier needs both labels present in the training rows."""


class NonFiniteFeature(StylusError):
    """Feature matrix contains NaN or infinite entries."""


# rate models ----------------------------------------------------------

class InvalidParam(StylusError):
    """A distribution parameter is outside its valid domain."""


class UncoveredWord(StylusError):
    """A word was requested for scoring but no rate model exists for it."""

    def __init__(self, word):
        self.word = word
        super().__init__(f"no fitted rate model for word {word!r}")


class NoOccurrences(StylusError):
    """A word has zero pooled occurrences, so its rates cannot be fit."""


# evaluation -----------------------------------------------------------

class DegenerateSample(StylusError):
    """All sample points coincide; a density bandwidth cannot be formed."""


# cli ------------------------------------------------------------------

class UnknownTable(StylusError):
    """Requested report table id is not one of the published tables."""

    def __init__(self, table_id, known):
        self.table_id = table_id
        super().__init__(
            f"unknown table {table_id!r}; expected one of {sorted(known)}"
        )


class ConfigError(StylusError):
    """Run configuration is malformed or references missing files."""


class StageError(StylusError):
    """Wraps a failure inside a named pipeline stage."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")
