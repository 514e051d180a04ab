"""Exception types raised across the library."""


class SkewlibError(ValueError):
    """Base class for all validation errors raised by skewlib."""


class DimMismatch(SkewlibError):
    """Operands have incompatible dimensions."""


class NotHermitian(SkewlibError):
    """Matrix fails the Hermiticity check."""


class NotNormal(SkewlibError):
    """Matrix fails the normality check (strict mode)."""


class NegativeSpectrum(SkewlibError):
    """A would-be density matrix has an eigenvalue below -1e-8."""


class OutOfBall(SkewlibError):
    """Bloch vector lies outside the unit ball."""


class BadRank(SkewlibError):
    """Requested rank is outside 1..d."""


class BadWeight(SkewlibError):
    """Mean weight outside its admissible range."""


class BadOrder(SkewlibError):
    """Invalid power-mean order (e.g. nonnegative finite exponent)."""


class BadSpectrum(SkewlibError):
    """Qubit spectrum fails lambda1 >= lambda2 >= 0, lambda1 + lambda2 = 1."""


class BadPurity(SkewlibError):
    """Qubit purity outside (1/2, 1]."""


class DimUnsupported(SkewlibError):
    """Operation is defined only for a specific dimension (usually d = 2)."""
