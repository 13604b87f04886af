"""Exception hierarchy.

Every error raised on purpose by the package derives from ``OpmeansError`` so
callers (and the fuzz driver) can separate numerical failures from bugs.
"""


class OpmeansError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(OpmeansError, ValueError):
    pass


class BadDimension(OpmeansError, ValueError):
    pass


class NonFiniteEntry(OpmeansError, ValueError):
    pass


class NotHermitian(OpmeansError, ValueError):
    pass


class NotPositive(OpmeansError, ValueError):
    pass


class IllConditioned(OpmeansError, ValueError):
    pass


class SingularMatrix(OpmeansError, ArithmeticError):
    pass


class NoConvergence(OpmeansError, ArithmeticError):
    pass


class SpectrumNotEnclosed(OpmeansError, ValueError):
    pass


class ResolventSingular(OpmeansError, ArithmeticError):
    pass


class NonPositiveInput(OpmeansError, ValueError):
    pass


class WeightOutOfRange(OpmeansError, ValueError):
    pass


class BadInterval(OpmeansError, ValueError):
    pass


class VariantPreconditionViolated(OpmeansError, ValueError):
    pass


class DomainViolation(OpmeansError, ValueError):
    pass


class ZeroDenominatorWeight(OpmeansError, ValueError):
    pass


class ParameterOutOfDomain(OpmeansError, ValueError):
    pass


class UnknownLawId(OpmeansError, KeyError):
    pass


class ConfigError(OpmeansError, ValueError):
    pass


class IoError(OpmeansError, OSError):
    pass
