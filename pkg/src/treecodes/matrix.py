"""Dense exact matrices over a field, and over F_p[x].

Indices in the public API are 1-based: ``M.entry(1, 1)`` is the top-left
entry and ``submatrix(M, [1, 3], [2, 3])`` picks rows 1, 3 and columns 2, 3.
The raw rows (``M.rows``) are ordinary 0-based tuples of field values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    NonIncreasingIndices,
    NotSquare,
    SingularLeadingMinor,
    SingularMatrix,
)
from .poly import Poly
from .scalar import Field, PrimeField, QQ, Scalar


# -- raw kernels (lists of lists of field values) ----------------------------

def _det(F: Field, rows) -> object:
    n = len(rows)
    if n == 0:
        return F.one
    if isinstance(F, PrimeField):
        return _det_mod_p(rows, F.p)
    if F is QQ or F == QQ:
        return Fraction(_det_int_bareiss(rows))
    a = [list(r) for r in rows]
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(a[r][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        pc = a[c][c]
        det = F.mul(det, pc)
        inv = F.inv(pc)
        for r in range(c + 1, n):
            if F.is_zero(a[r][c]):
                continue
            factor = F.mul(a[r][c], inv)
            row_r, row_c = a[r], a[c]
            for k in range(c + 1, n):
                row_r[k] = F.sub(row_r[k], F.mul(factor, row_c[k]))
    return det


def _det_mod_p(rows, p) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pc = a[c][c]
        det = det * pc % p
        inv = pow(pc, p - 2, p)
        row_c = a[c]
        for r in range(c + 1, n):
            x = a[r][c]
            if x:
                f = x * inv % p
                row_r = a[r]
                for k in range(c + 1, n):
                    row_r[k] = (row_r[k] - f * row_c[k]) % p
    return det % p


def _det_int_bareiss(rows) -> Fraction:
    """Determinant over Q: clear denominators, then fraction-free Bareiss on integers."""
    n = len(rows)
    scale = 1
    a = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        scale *= den
        a.append([int(x * den) for x in r])
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if a[r][c]), None)
            if piv is None:
                return Fraction(0)
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pc = a[c][c]
        for r in range(c + 1, n):
            row_r, row_c = a[r], a[c]
            arc = row_r[c]
            for k in range(c + 1, n):
                row_r[k] = (row_r[k] * pc - arc * row_c[k]) // prev
        prev = pc
    return Fraction(sign * a[n - 1][n - 1], scale)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _rref(F: Field, rows, ncols: int):
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not F.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        row_r = a[r]
        for i in range(nrows):
            if i != r and not F.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], row_r)]
        pivots.append(c)
        r += 1
    return a, pivots


def _rank(F: Field, rows, ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    if isinstance(F, PrimeField):
        return _rank_mod_p(rows, ncols, F.p)
    return len(_rref(F, rows, ncols)[1])


def _rank_mod_p(rows, ncols, p) -> int:
    a = [list(r) for r in rows]
    nrows = len(a)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        row_r = a[r]
        for i in range(r + 1, nrows):
            x = a[i][c]
            if x:
                f = x * inv % p
                row_i = a[i]
                for k in range(c, ncols):
                    row_i[k] = (row_i[k] - f * row_r[k]) % p
        r += 1
    return r


def _nullspace(F: Field, rows, ncols: int):
    """Basis of ``{v : A v = 0}`` as a list of raw vectors."""
    red, pivots = _rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(red[i][fc])
        basis.append(v)
    return basis


# -- Matrix -------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over ``field``."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, entries, convert: bool = True):
        rows = [list(r) for r in entries]
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if ncols == 0 or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or empty rows")
        if convert:
            rows = [[field.convert(x) for x in r] for r in rows]
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], convert=False)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], convert=False)

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def entry(self, i: int, j: int):
        """Raw value at 1-based position (i, j)."""
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexOutOfRange(f"({i}, {j}) outside {self.nrows}x{self.ncols}")
        return self.rows[i - 1][j - 1]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.entry(i, j))

    def column(self, j: int):
        return tuple(r[j - 1] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)), convert=False)

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            from .errors import FieldMismatch

            raise FieldMismatch("matrices over different fields")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = F.zero
                for x, y in zip(r, c):
                    if not F.is_zero(x) and not F.is_zero(y):
                        acc = F.add(acc, F.mul(x, y))
                row.append(acc)
            out.append(row)
        return Matrix(F, out, convert=False)

    def __add__(self, other):
        F = self.field
        return Matrix(F, [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], convert=False)

    def __sub__(self, other):
        F = self.field
        return Matrix(F, [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], convert=False)

    def __neg__(self):
        F = self.field
        return Matrix(F, [[F.neg(x) for x in r] for r in self.rows], convert=False)

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.convert(c)
        return Matrix(F, [[F.mul(c, x) for x in r] for r in self.rows], convert=False)

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)], convert=False)

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, list(self.rows) + list(other.rows), convert=False)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for r in self.rows for x in r)

    def is_lower_triangular(self) -> bool:
        F = self.field
        return all(F.is_zero(self.rows[i][j]) for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_upper_triangular(self) -> bool:
        F = self.field
        return all(F.is_zero(self.rows[i][j]) for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def to_field(self, field: Field) -> "Matrix":
        """Map entries into another field (e.g. integer matrices from Q into F_p)."""
        return Matrix(field, [[field.convert(x) for x in r] for r in self.rows], convert=False)

    def submatrix(self, rows, cols) -> "Matrix":
        return submatrix(self, rows, cols)

    def determinant(self):
        return determinant(self)

    det = determinant

    def rank(self) -> int:
        return rank(self)

    def lu_factor(self):
        return lu_factor(self)

    def invert(self) -> "Matrix":
        return invert(self)

    def nullspace(self) -> list[tuple]:
        return [tuple(v) for v in _nullspace(self.field, self.rows, self.ncols)]

    def row_space_equal(self, other: "Matrix") -> bool:
        r = self.rank()
        return r == other.rank() and r == self.vstack(other).rank()

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def tolist(self, fmt: bool = True):
        if fmt:
            return [[self.field.format(x) for x in r] for r in self.rows]
        return [list(r) for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"


def _check_indices(idx: Sequence[int], bound: int, what: str) -> list[int]:
    idx = list(idx)
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise NonIncreasingIndices(f"{what} indices {idx} not strictly increasing")
    for i in idx:
        if not 1 <= i <= bound:
            raise IndexOutOfRange(f"{what} index {i} outside 1..{bound}")
    return idx


def submatrix(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """``M[i_1..i_s | j_1..j_t]`` with 1-based, strictly increasing index lists."""
    rows = _check_indices(rows, M.nrows, "row")
    cols = _check_indices(cols, M.ncols, "column")
    if not rows or not cols:
        raise IndexOutOfRange("empty index list")
    return Matrix(M.field, [[M.rows[i - 1][j - 1] for j in cols] for i in rows], convert=False)


def minor(M: Matrix, rows: Sequence[int], cols: Sequence[int]):
    """Raw determinant of ``M[rows | cols]`` without building a Matrix (no index validation)."""
    R = M.rows
    return _det(M.field, [[R[i - 1][j - 1] for j in cols] for i in rows])


def determinant(M):
    """Exact determinant; for a :class:`PolyMatrix` a :class:`Poly` (fraction-free)."""
    if isinstance(M, PolyMatrix):
        return M.determinant()
    if not M.is_square:
        raise NotSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    return _det(M.field, M.rows)


def rank(M: Matrix) -> int:
    return _rank(M.field, M.rows, M.ncols)


def lu_factor(M: Matrix) -> tuple[Matrix, Matrix]:
    """``M = L U`` without pivoting, ``L`` lower triangular, ``U`` unit upper triangular.

    Crout's order of elimination; ``L[k][k]`` is the ratio of consecutive
    leading principal minors, so the first zero one is reported.
    """
    if not M.is_square:
        raise NotSquare("LU of a non-square matrix")
    F = M.field
    n = M.nrows
    A = M.rows
    L = [[F.zero] * n for _ in range(n)]
    U = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(k, n):
            acc = A[i][k]
            for t in range(k):
                acc = F.sub(acc, F.mul(L[i][t], U[t][k]))
            L[i][k] = acc
        if F.is_zero(L[k][k]):
            raise SingularLeadingMinor(k + 1)
        inv = F.inv(L[k][k])
        for j in range(k + 1, n):
            acc = A[k][j]
            for t in range(k):
                acc = F.sub(acc, F.mul(L[k][t], U[t][j]))
            U[k][j] = F.mul(acc, inv)
    return Matrix(F, L, convert=False), Matrix(F, U, convert=False)


def invert(M: Matrix) -> Matrix:
    if not M.is_square:
        raise NotSquare("inverse of a non-square matrix")
    F = M.field
    n = M.nrows
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(M.rows)]
    red, pivots = _rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix(F, [r[n:] for r in red], convert=False)


def solve(M: Matrix, b) -> list:
    """Unique solution ``x`` of ``M x = b`` (raw vector); raises :class:`SingularMatrix`."""
    F = M.field
    n = M.ncols
    aug = [list(r) + [F.convert(v)] for r, v in zip(M.rows, b)]
    red, pivots = _rref(F, aug, n + 1)
    if n in pivots:
        raise SingularMatrix("inconsistent system")
    if pivots != list(range(n)):
        raise SingularMatrix("system has no unique solution")
    return [red[i][n] for i in range(n)]


# -- polynomial matrices ------------------------------------------------------

class PolyMatrix:
    """Square-or-not matrix with :class:`Poly` entries over a common base field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, entries):
        rows = [list(r) for r in entries]
        self.field = field
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        for r in rows:
            for e in r:
                if not isinstance(e, Poly) or e.field != field:
                    raise TypeError("PolyMatrix entries must be Poly over the matrix field")
        self.rows = tuple(tuple(r) for r in rows)

    def entry(self, i, j) -> Poly:
        return self.rows[i - 1][j - 1]

    def submatrix(self, rows, cols) -> "PolyMatrix":
        rows = _check_indices(rows, self.nrows, "row")
        cols = _check_indices(cols, self.ncols, "column")
        return PolyMatrix(self.field, [[self.rows[i - 1][j - 1] for j in cols] for i in rows])

    def determinant(self) -> Poly:
        return det_bareiss(self)

    def evaluate(self, field: Field, point) -> Matrix:
        """Substitute ``x = point`` where ``point`` lives in ``field`` (an extension of the base)."""
        out = []
        for r in self.rows:
            row = []
            for e in r:
                acc = field.zero
                for c in reversed(e.coeffs):
                    acc = field.add(field.mul(acc, point), field.convert(int(c)))
                row.append(acc)
            out.append(row)
        return Matrix(field, out, convert=False)

    def __repr__(self):
        return f"PolyMatrix({self.field!r}, {[[str(e) for e in r] for r in self.rows]})"


def det_bareiss(M: PolyMatrix) -> Poly:
    """Fraction-free (Bareiss) determinant; every division is exact in F[x]."""
    if M.nrows != M.ncols:
        raise NotSquare("determinant of a non-square polynomial matrix")
    n = M.nrows
    F = M.field
    if n == 0:
        return Poly(F, [1])
    a = [list(r) for r in M.rows]
    sign = 1
    prev = Poly(F, [1])
    for c in range(n - 1):
        if a[c][c].is_zero():
            piv = next((r for r in range(c + 1, n) if not a[r][c].is_zero()), None)
            if piv is None:
                return Poly(F, [])
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pc = a[c][c]
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                a[r][k] = (a[r][k] * pc - a[r][c] * a[c][k]).exact_div(prev)
        prev = pc
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def det_cofactor(M: PolyMatrix) -> Poly:
    """Leibniz expansion over all permutations; an independent oracle for small n."""
    n = M.nrows
    F = M.field
    total = Poly(F, [])
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly(F, [1])
        for i, j in enumerate(perm):
            term = term * M.rows[i][j]
            if term.is_zero():
                break
        if not term.is_zero():
            total = total - term if inversions % 2 else total + term
    return total
