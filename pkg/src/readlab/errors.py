"""Exception hierarchy shared by all readlab modules.

Every exception maps to a process exit code via ``exit_code`` so the CLI
can translate failures uniformly: 2 usage, 3 bad input/schema, 4 degenerate
data, 5 internal.
"""


class ReadlabError(Exception):
    """Base class for all readlab errors."""

    exit_code = 5


class UsageError(ReadlabError):
    """Invalid flag combination or configuration detected before any work."""

    exit_code = 2


class InputError(ReadlabError):
    """Malformed or missing input files, schemas, model files."""

    exit_code = 3


class DegenerateDataError(ReadlabError):
    """Data that is structurally valid but unusable (empty, constant, ...)."""

    exit_code = 4


class InternalError(ReadlabError):
    exit_code = 5


# --- input / schema ---------------------------------------------------------

class MissingFile(InputError):
    pass


class BadRow(InputError):
    """A manifest or prediction row that cannot be used; carries the line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonContiguousClasses(InputError):
    pass


class SchemaError(InputError):
    """Precomputed-score file violates the expected JSONL schema."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class VersionMismatch(InputError):
    """Model file header missing or written by an incompatible version."""


class ProviderFailure(InputError):
    """A likelihood provider could not score the requested sentence."""


class MissingDocument(ProviderFailure):
    """Precomputed provider has no entry for the requested document."""


class UnknownDocId(InputError):
    """Prediction file references a document absent from the gold manifest."""


class LengthMismatch(InputError):
    pass


class LabelOutOfRange(InputError):
    pass


class DimensionMismatch(InputError):
    pass


# --- degenerate data --------------------------------------------------------

class DegenerateProfile(DegenerateDataError):
    """A surface-count profile with a zero denominator; names the zero field."""

    def __init__(self, field: str):
        super().__init__(f"degenerate profile: {field} is zero")
        self.field = field


class EmptyCorpus(DegenerateDataError):
    pass


class EmptyDocument(DegenerateDataError):
    pass


class EmptySentence(DegenerateDataError):
    pass


class EmptyInput(DegenerateDataError):
    pass


class InvalidProbability(DegenerateDataError):
    """Token probability outside (0, 1]."""


class ConstantSeries(DegenerateDataError):
    pass


class EmptyMatrix(DegenerateDataError):
    pass


class DegenerateMarginals(DegenerateDataError):
    """Expected weighted disagreement is zero while observed is not."""


class EmptyClass(DegenerateDataError):
    pass


class ClassSmallerThanK(DegenerateDataError):
    pass


class SingleClass(DegenerateDataError):
    pass


# --- internal ---------------------------------------------------------------

class NonFiniteLoss(InternalError):
    """Training loss became NaN/inf; usually a too-large learning rate."""
