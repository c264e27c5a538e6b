"""Exception types raised across the package.

Every error derives from :class:`TreeCodeError` so callers (and the CLI) can
catch library failures in one place; most also derive from the closest
builtin so ordinary ``except ValueError`` code keeps working.
"""

from __future__ import annotations


class TreeCodeError(Exception):
    """Base class for all library errors."""


# -- scalar -------------------------------------------------------------------

class CompositeModulus(TreeCodeError, ValueError):
    def __init__(self, p):
        super().__init__(f"modulus {p} is not prime")
        self.p = p


class ReduciblePolynomial(TreeCodeError, ValueError):
    def __init__(self, coeffs, p):
        super().__init__(f"polynomial {list(coeffs)} is reducible (or not monic) over F_{p}")
        self.coeffs = tuple(coeffs)
        self.p = p


class DivisionByZero(TreeCodeError, ZeroDivisionError):
    pass


class FieldMismatch(TreeCodeError, TypeError):
    pass


# -- matrix -------------------------------------------------------------------

class NotSquare(TreeCodeError, ValueError):
    pass


class IndexOutOfRange(TreeCodeError, IndexError):
    pass


class NonIncreasingIndices(TreeCodeError, ValueError):
    pass


class SingularLeadingMinor(TreeCodeError, ArithmeticError):
    """LU without pivoting failed; ``k`` is the 1-based size of the first zero leading minor."""

    def __init__(self, k: int):
        super().__init__(f"leading principal minor of order {k} vanishes")
        self.k = k


class SingularMatrix(TreeCodeError, ArithmeticError):
    pass


class MatrixFormatError(TreeCodeError, ValueError):
    pass


# -- families -----------------------------------------------------------------

class DenominatorZero(TreeCodeError, ZeroDivisionError):
    def __init__(self, i: int, j: int):
        super().__init__(f"a_{i} - b_{j} = 0")
        self.i, self.j = i, j


class UnitDenominator(TreeCodeError, ZeroDivisionError):
    def __init__(self, e: int):
        super().__init__(f"a^{e} = 1, denominator 1 - a^{e} vanishes")
        self.e = e


# -- ttn ----------------------------------------------------------------------

class SearchExhausted(TreeCodeError, RuntimeError):
    def __init__(self, bound):
        super().__init__(f"no candidate found within search bound {bound}")
        self.bound = bound


class NonIntegralFamily(TreeCodeError, ValueError):
    pass


# -- treecode -----------------------------------------------------------------

class TooLarge(TreeCodeError, ValueError):
    pass


class WrongRate(TreeCodeError, ValueError):
    pass


class NotNormalForm(TreeCodeError, ValueError):
    pass


class PropertyStarViolated(NotNormalForm):
    """The last ``d*k`` columns do not span dimension ``(d-1)*k``."""

    def __init__(self, k: int):
        super().__init__(f"property (*) fails at k={k}")
        self.k = k


class RankDeficient(NotNormalForm):
    pass


class ZeroDiagonal(TreeCodeError, ValueError):
    def __init__(self, i: int):
        super().__init__(f"diagonal entry {i} is zero")
        self.i = i


class NotTTN(TreeCodeError, ValueError):
    def __init__(self, witness):
        super().__init__(f"matrix is not triangular totally nonsingular, singular submatrix {witness}")
        self.witness = witness


class InvalidTreeCode(TreeCodeError, ValueError):
    pass


# -- growth / concat ----------------------------------------------------------

class DomainError(TreeCodeError, ValueError):
    pass


class RetriesExhausted(TreeCodeError, RuntimeError):
    def __init__(self, step, attempts=None):
        super().__init__(f"retries exhausted at step {step}")
        self.step = step
        self.attempts = attempts


class NotFound(TreeCodeError, LookupError):
    pass


class AlphabetMismatch(TreeCodeError, ValueError):
    pass


class LengthOverflow(TreeCodeError, ValueError):
    pass


# -- birkhoff -----------------------------------------------------------------

class NodesEqual(TreeCodeError, ValueError):
    pass


class SingularSystem(TreeCodeError, ArithmeticError):
    pass
