"""Exception hierarchy shared by all modules."""


class CatWeakError(Exception):
    """Base class for every error raised by this package."""


class DegenerateStateError(CatWeakError, ValueError):
    """The superposition a*psi_plus + b*psi_minus vanishes identically."""


class QuadratureError(CatWeakError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class RegimeError(CatWeakError, ValueError):
    """A weak-regime approximation was requested outside its validity domain."""


class DivergentWeakValueError(CatWeakError, ZeroDivisionError):
    """Pre- and post-selected states are (numerically) orthogonal."""


class InverseMapError(CatWeakError, ValueError):
    """Cat-state geometry cannot be produced by any Stern-Gerlach configuration."""


class ConfigError(CatWeakError, ValueError):
    """Invalid run configuration (CLI or JSON)."""


class GridResolutionWarning(UserWarning):
    """Sampling grid is coarser or narrower than recommended."""
