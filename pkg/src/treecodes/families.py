"""Generators for the classical sources of (triangular) totally nonsingular matrices."""

from __future__ import annotations

from math import comb
from typing import Sequence

from .errors import DenominatorZero, UnitDenominator
from .matrix import Matrix, PolyMatrix
from .poly import Poly, find_irreducible
from .scalar import ExtensionField, Field, PrimeField, QQ


def cauchy_like(a: Sequence, b: Sequence, g: Sequence | None = None, h: Sequence | None = None,
                field: Field = QQ) -> Matrix:
    """Entry ``(i, j) = g_i h_j / (a_i - b_j)``; ``g`` and ``h`` default to all ones."""
    F = field
    a = [F.convert(x) for x in a]
    b = [F.convert(x) for x in b]
    g = [F.one] * len(a) if g is None else [F.convert(x) for x in g]
    h = [F.one] * len(b) if h is None else [F.convert(x) for x in h]
    if len(g) != len(a) or len(h) != len(b):
        raise ValueError("g must match a and h must match b in length")
    rows = []
    for i, (ai, gi) in enumerate(zip(a, g), start=1):
        row = []
        for j, (bj, hj) in enumerate(zip(b, h), start=1):
            den = F.sub(ai, bj)
            if F.is_zero(den):
                raise DenominatorZero(i, j)
            row.append(F.div(F.mul(gi, hj), den))
        rows.append(row)
    return Matrix(F, rows, convert=False)


def cauchy(a: Sequence, b: Sequence, field: Field = QQ) -> Matrix:
    return cauchy_like(a, b, field=field)


def hilbert(n: int, field: Field = QQ, m: int | None = None) -> Matrix:
    """``1/(i+j-1)`` as the Cauchy matrix with ``a_i = i`` and ``b_j = 1 - j``.

    Over F_p this needs ``p >= m + n`` or some denominator vanishes.
    """
    m = n if m is None else m
    return cauchy_like(range(1, m + 1), [1 - j for j in range(1, n + 1)], field=field)


def pascal_family(n: int, which: str = "P", field: Field = QQ) -> Matrix:
    """``P_n = (C(i+j, j))`` or ``L_n = (C(i, j))`` for ``i, j = 0..n`` -- an (n+1)x(n+1) matrix."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if which == "P":
        rows = [[comb(i + j, j) for j in range(n + 1)] for i in range(n + 1)]
    elif which == "L":
        rows = [[comb(i, j) for j in range(n + 1)] for i in range(n + 1)]
    else:
        raise ValueError("which must be 'P' or 'L'")
    return Matrix(field, rows)


def pascal(n: int, field: Field = QQ) -> Matrix:
    return pascal_family(n, "P", field)


def binomial_lower(n: int, field: Field = QQ) -> Matrix:
    return pascal_family(n, "L", field)


def vandermonde(m: int, xs: Sequence, field: Field = QQ) -> Matrix:
    """``V_m(x_1..x_n)``: row ``i+1`` holds the i-th powers, ``i = 0..m-1``."""
    xs = [field.convert(x) for x in xs]
    return Matrix(field, [[field.pow(x, i) for x in xs] for i in range(m)], convert=False)


def singleton_matrix(a, n: int, field: Field) -> Matrix:
    """``1/(1 - a^(i+j-1))`` for 1-based ``i, j``; needs ``a^e != 1`` for ``e = 1..2n-1``."""
    F = field
    a = F.convert(a)
    powers = {}
    for e in range(1, 2 * n):
        ae = F.pow(a, e)
        if ae == F.one:
            raise UnitDenominator(e)
        powers[e] = F.inv(F.sub(F.one, ae))
    return Matrix(F, [[powers[i + j - 1] for j in range(1, n + 1)] for i in range(1, n + 1)], convert=False)


def wn_exponent(n: int, i: int, j: int) -> int:
    return (n - i + j - 1) ** 2


def wn_matrix(n: int, p: int) -> PolyMatrix:
    """Symbolic ``W_n(x)`` over F_p: ``x^((n-i+j-1)^2)`` on and below the diagonal."""
    F = PrimeField(p)
    zero = Poly(F, [])
    rows = [[Poly.monomial(F, wn_exponent(n, i, j)) if i >= j else zero
             for j in range(1, n + 1)] for i in range(1, n + 1)]
    return PolyMatrix(F, rows)


def wn_degree_bound(n: int) -> int:
    """Upper bound on the degree of any square subdeterminant of ``W_n``: s entries of degree <= (n-1)^2."""
    return n * (n - 1) ** 2


def wn_field_instance(n: int, p: int, seed=0) -> tuple[ExtensionField, Matrix]:
    """``W_n`` evaluated at ``x`` in F_p[x]/(f) with ``deg f > n (n-1)^2``."""
    f = find_irreducible(p, wn_degree_bound(n) + 1, seed)
    field = ExtensionField(p, f.coeffs_int())
    return field, wn_matrix(n, p).evaluate(field, field.generator)
