import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import binomial_matrix, leibniz_det, pascal_matrix
from treecodes.errors import DenominatorZero, UnitDenominator
from treecodes.families import (
    binomial_lower, cauchy, cauchy_like, hilbert, pascal, singleton_matrix, vandermonde, wn_field_instance,
    wn_matrix,
)
from treecodes.matrix import Matrix, invert
from treecodes.poly import Poly
from treecodes.scalar import QQ, PrimeField
from treecodes.ttn import admissible_tuples, nonsingularity_scan

F5, F7 = PrimeField(5), PrimeField(7)


def test_cauchy_over_f7():
    assert cauchy([1, 2], [3, 4], F7) == Matrix(F7, [[3, 2], [6, 3]])


def test_hilbert_2x2():
    H = Matrix(QQ, [[1, Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 3)]])
    assert cauchy([1, 2], [0, -1]) == H
    assert hilbert(2) == H


def test_cauchy_denominator_zero():
    with pytest.raises(DenominatorZero) as exc:
        cauchy([1], [1])
    assert (exc.value.i, exc.value.j) == (1, 1)


def test_cauchy_like_scales_rows_and_columns():
    C = cauchy_like([1, 2], [3, 4], g=[2, 1], h=[1, 3], field=F7)
    assert C == Matrix(F7, [[6, 5], [6, 2]])


def test_pascal_examples():
    assert pascal(2) == Matrix(QQ, [[1, 1, 1], [1, 2, 3], [1, 3, 6]])
    assert binomial_lower(2) == Matrix(QQ, [[1, 0, 0], [1, 1, 0], [1, 2, 1]])
    assert binomial_lower(0) == Matrix(QQ, [[1]])


@pytest.mark.parametrize("n", range(9))
def test_pascal_factors_as_binomial_times_transpose(n):
    L = binomial_lower(n)
    assert pascal(n) == L @ L.T
    assert pascal(n) == Matrix(QQ, pascal_matrix(n))
    assert L == Matrix(QQ, binomial_matrix(n))


def test_vandermonde_examples():
    assert vandermonde(2, [1, 2]) == Matrix(QQ, [[1, 1], [1, 2]])
    assert vandermonde(3, [1, 2, 3], F5) == Matrix(F5, [[1, 1, 1], [1, 2, 3], [1, 4, 4]])
    assert vandermonde(1, [4, 5, 6]) == Matrix(QQ, [[1, 1, 1]])


def test_singleton_examples():
    assert singleton_matrix(3, 2, F7) == Matrix(F7, [[3, 6], [6, 4]])
    assert singleton_matrix(2, 1, F7) == Matrix(F7, [[6]])


@pytest.mark.parametrize("a", [1, 6])
def test_singleton_low_order_rejected(a):
    # 1 has order 1 and 6 = -1 has order 2 in F_7
    with pytest.raises(UnitDenominator):
        singleton_matrix(a, 2, F7)


def test_wn_examples():
    F3 = PrimeField(3)
    x = Poly.x(F3)
    W2 = wn_matrix(2, 3)
    assert [[W2.entry(i, j) for j in (1, 2)] for i in (1, 2)] == [[x, Poly(F3, [])], [Poly(F3, [1]), x]]
    assert wn_matrix(1, 3).entry(1, 1) == Poly(F3, [1])


def test_wn_field_instance():
    field, M = wn_field_instance(2, 2, 0)
    assert field.k >= 3
    x, one, zero = field.generator, field.one, field.zero
    assert M == Matrix(field, [[x, zero], [one, x]], convert=False)


@pytest.mark.parametrize("m,n,p", [(2, 3, 11), (3, 3, 13), (4, 4, 17), (5, 5, 23)])
def test_cauchy_totally_nonsingular(m, n, p):
    F = PrimeField(p)
    rng = random.Random(m * 100 + n)
    for _ in range(3):
        params = rng.sample(range(p), m + n)
        C = cauchy(params[:m], params[m:], F)
        rows = [list(r) for r in C.rows]
        for s in range(1, min(m, n) + 1):
            for r in combinations(range(m), s):
                for c in combinations(range(n), s):
                    assert leibniz_det([[rows[i][j] for j in c] for i in r], p) != 0


@pytest.mark.parametrize("m,n,p", [(2, 2, 11), (3, 4, 13), (4, 4, 17), (4, 3, 101)])
def test_vandermonde_quotient_totally_nonsingular(m, n, p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(3):
        params = rng.sample(range(p), m + n)
        A = invert(vandermonde(m, params[:m], F)) @ vandermonde(m, params[m:], F)
        assert nonsingularity_scan(A, "all").holds


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wn_admissible_minors_nonzero(n, p):
    W = wn_matrix(n, p)
    for rows, cols in admissible_tuples(n, "lower"):
        assert not W.submatrix(rows, cols).determinant().is_zero()
