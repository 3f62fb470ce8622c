"""Exception hierarchy shared across the package."""


class CompavError(Exception):
    """Base class for all errors raised by compav."""


class EmptyInput(CompavError, ValueError):
    pass


class EmptyScoreSet(EmptyInput):
    """A calibration class (Y or N) has no scores."""


class LengthMismatch(CompavError, ValueError):
    pass


class UnlabeledProblem(CompavError, ValueError):
    pass


class SingleClass(CompavError, ValueError):
    pass


class EmptyTokenSet(CompavError, ValueError):
    pass


class TooFewProblems(CompavError, ValueError):
    pass


class ModelFormatError(CompavError, ValueError):
    """Raised when a serialized model cannot be parsed."""


class CorpusError(CompavError):
    """Base for on-disk corpus defects. ``path`` names the offending file or directory."""

    def __init__(self, message, path=None):
        super().__init__(message if path is None else f"{message}: {path}")
        self.path = path


class MissingUnknown(CorpusError):
    pass


class MultipleUnknowns(CorpusError):
    pass


class TruthReferencesMissingProblem(CorpusError):
    pass


class UnreadableFile(CorpusError):
    pass
