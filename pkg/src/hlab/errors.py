"""Exception types shared across the package."""


class HlabError(Exception):
    """Base class for all errors raised by hlab."""


class CapacityError(HlabError, ValueError):
    """Requested size exceeds a configured computational capacity."""


class SingularEvaluationError(HlabError, ZeroDivisionError):
    """An exact product hit a zero factor in a denominator."""


class TruncationError(HlabError, LookupError):
    """A coefficient was requested beyond the known truncation order."""


class AlgebraMismatchError(HlabError, TypeError):
    """Series over different coefficient algebras were combined."""
