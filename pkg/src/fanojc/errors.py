"""Exception types shared across the package."""


class FanojcError(Exception):
    """Base class for package-specific errors."""


class InvalidParameterError(FanojcError, ValueError):
    """A physical parameter is outside its admissible range."""


class SingularPointError(FanojcError, ArithmeticError):
    """Closed forms were evaluated exactly at a lossless bound state, where
    the truncated steady state has no finite solution."""


class ZeroIntensityError(FanojcError, ArithmeticError):
    """Correlation functions were requested at a point with no cavity field."""


class UndefinedFanoParameterError(FanojcError, ValueError):
    """q = 2g/sqrt(kappa0*gamma0) was requested while kappa0*gamma0 == 0."""


class DimensionOverflowError(FanojcError, ValueError):
    """The requested Fock cutoff exceeds the dense-solver dimension cap."""


class RankDeficiencyError(FanojcError, ArithmeticError):
    """The trace-constrained steady-state system is singular, i.e. the
    dynamics admit more than one stationary state."""
