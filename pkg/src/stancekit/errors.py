"""Exception types shared across the toolkit."""


class StancekitError(Exception):
    """Base class for all toolkit errors."""


# --- feature extraction ---

class EmptyCorpus(StancekitError):
    """Fit was called with zero documents."""


class EmptyVocabulary(StancekitError):
    """No document in the corpus produced a single feature."""


# --- model training / application ---

class DimensionMismatch(StancekitError):
    """Vector dimension does not match the model or matrix dimension."""


class SingleClassCorpus(StancekitError):
    """Training data contains fewer than two distinct labels."""


class NonFiniteFeature(StancekitError):
    """A feature value is NaN or infinite."""


# --- evaluation ---

class LengthMismatch(StancekitError):
    """Paired sequences have different lengths."""


class UnknownLabel(StancekitError):
    """A label is not in the declared class list."""


# --- dataset / embedding ingestion ---

class MissingColumn(StancekitError):
    """A required CSV column is absent."""


class BadLabel(StancekitError):
    """A row carries a stance or split value outside the allowed set."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class DuplicateId(StancekitError):
    """The same record id appears more than once."""


class EncodingError(StancekitError):
    """Input file is not valid UTF-8."""


class DimMismatch(StancekitError):
    """An embedding vector's length differs from the file's dimension."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonFiniteValue(StancekitError):
    """An embedding component is NaN or infinite."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingEmbedding(StancekitError):
    """Dataset ids with no embedding vector."""

    def __init__(self, ids):
        self.ids = list(ids)
        shown = ", ".join(self.ids[:5])
        more = "" if len(self.ids) <= 5 else f" (+{len(self.ids) - 5} more)"
        super().__init__(f"no embedding for ids: {shown}{more}")


# --- experiment harness / serialization ---

class ConfigError(StancekitError):
    """Experiment configuration is invalid; message lists every bad key."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid config:\n  " + "\n  ".join(self.problems))


class ExperimentError(StancekitError):
    """A pipeline stage failed; message carries the run's config context."""


class FormatError(StancekitError):
    """A serialized artifact is corrupt or has an unsupported version."""
