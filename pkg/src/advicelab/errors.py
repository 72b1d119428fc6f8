"""Exception hierarchy shared across the package."""


class AdviceLabError(Exception):
    """Base class for every error raised by advicelab."""


class InvalidSymbol(AdviceLabError, ValueError):
    pass


class UnknownSymbol(AdviceLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DimensionMismatch(AdviceLabError, ValueError):
    pass


class NotStochastic(AdviceLabError, ValueError):
    pass


class AlphabetMismatch(AdviceLabError, ValueError):
    pass


class AdviceLengthError(AdviceLabError, ValueError):
    pass


class SupportMismatch(AdviceLabError, ValueError):
    pass


class MalformedPartition(AdviceLabError, ValueError):
    pass


class EmptyStringInLanguage(AdviceLabError, ValueError):
    pass


class NotUniformD(AdviceLabError, ValueError):
    pass


class DegenerateContext(AdviceLabError, ValueError):
    pass


class AdjustmentFailure(AdviceLabError, RuntimeError):
    pass


class ScaleLimit(AdviceLabError, RuntimeError):
    """An enumeration would exceed the configured budget."""


class VerificationGap(AdviceLabError, RuntimeError):
    """A refutation that must exist was not found; indicates a bug."""


class NoSolution(AdviceLabError, ValueError):
    """A GF(2) system is inconsistent."""


class DocumentError(AdviceLabError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
