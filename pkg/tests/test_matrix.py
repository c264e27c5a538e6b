import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import leibniz_det, rank_by_minors
from treecodes.errors import (
    IndexOutOfRange, MatrixFormatError, NonIncreasingIndices, NotSquare, SingularLeadingMinor, SingularMatrix,
)
from treecodes.families import pascal, wn_matrix
from treecodes.fileformat import dumps_matrix, loads_matrix
from treecodes.matrix import (
    Matrix, PolyMatrix, det_bareiss, det_cofactor, determinant, invert, lu_factor, rank, solve, submatrix,
)
from treecodes.poly import Poly
from treecodes.scalar import QQ, ExtensionField, PrimeField

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)


def rand_matrix(F, n, m, rng):
    return Matrix(F, [[F.random_element(rng) for _ in range(m)] for _ in range(n)], convert=False)


def rand_rational(n, m, rng):
    return Matrix(QQ, [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(m)] for _ in range(n)])


def test_full_submatrix():
    M = Matrix(QQ, [[1, 2], [3, 4]])
    assert submatrix(M, [1, 2], [1, 2]) == M


def test_single_entry_submatrix():
    assert submatrix(Matrix(QQ, [[1, 0], [1, 2]]), [2], [1]) == Matrix(QQ, [[1]])


def test_submatrix_of_interleaved():
    M = Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])
    assert submatrix(M, [1, 2], [2, 4]) == Matrix(F3, [[1, 0], [0, 1]])


def test_submatrix_errors():
    M = Matrix(QQ, [[1, 2], [3, 4]])
    with pytest.raises(IndexOutOfRange):
        submatrix(M, [3], [1])
    with pytest.raises(NonIncreasingIndices):
        submatrix(M, [2, 1], [1, 2])


def test_determinant_examples():
    assert determinant(Matrix.identity(QQ, 3)) == 1
    assert determinant(Matrix(QQ, [[1, 1], [1, 2]])) == 1
    with pytest.raises(NotSquare):
        determinant(Matrix(QQ, [[1, 2]]))


def test_symbolic_w2_determinant():
    W2 = wn_matrix(2, 3)
    x = Poly.x(F3)
    assert W2.entry(1, 1) == x and W2.entry(2, 1) == Poly(F3, [1]) and W2.entry(2, 2) == x
    assert W2.determinant() == Poly.monomial(F3, 2)


def test_rank_examples():
    assert rank(Matrix.zeros(QQ, 3, 5)) == 0
    assert rank(Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])) == 2
    assert rank(Matrix(QQ, [[1, 2], [2, 4]])) == 1


def test_lu_examples():
    L, U = lu_factor(Matrix.identity(QQ, 4))
    assert L == U == Matrix.identity(QQ, 4)
    L, U = lu_factor(pascal(2))
    assert L == Matrix(QQ, [[1, 0, 0], [1, 1, 0], [1, 2, 1]])
    assert U == L.T
    with pytest.raises(SingularLeadingMinor) as exc:
        lu_factor(Matrix(QQ, [[0, 1], [1, 0]]))
    assert exc.value.k == 1


def test_lu_reports_first_failing_order():
    with pytest.raises(SingularLeadingMinor) as exc:
        lu_factor(Matrix(QQ, [[1, 1, 0], [1, 1, 1], [0, 1, 1]]))
    assert exc.value.k == 2


def test_invert_examples():
    assert invert(Matrix.identity(QQ, 4)) == Matrix.identity(QQ, 4)
    T = Matrix(F3, [[1, 0], [1, 2]])
    assert invert(T) == T
    with pytest.raises(SingularMatrix):
        invert(Matrix(QQ, [[1, 1], [2, 2]]))


def test_solve():
    M = Matrix(QQ, [[2, 1], [1, 3]])
    x = solve(M, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(SingularMatrix):
        solve(Matrix(QQ, [[1, 1], [1, 1]]), [1, 2])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9), p=st.sampled_from([2, 3, 7, 101]))
def test_determinant_matches_leibniz_mod_p(seed, p):
    rng = random.Random(seed)
    F = PrimeField(p)
    n = rng.randint(1, 5)
    M = rand_matrix(F, n, n, rng)
    assert determinant(M) == leibniz_det([list(r) for r in M.rows], p)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_determinant_matches_leibniz_over_q(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    M = rand_rational(n, n, rng)
    assert determinant(M) == leibniz_det([list(r) for r in M.rows])


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**9), p=st.sampled_from([2, 3, 5]))
def test_rank_matches_minors(seed, p):
    rng = random.Random(seed)
    F = PrimeField(p)
    M = rand_matrix(F, rng.randint(1, 4), rng.randint(1, 4), rng)
    assert rank(M) == rank_by_minors([list(r) for r in M.rows], p)


@pytest.mark.parametrize("F", [F7, PrimeField(101), ExtensionField(2, [1, 1, 0, 1]), QQ], ids=str)
def test_det_multiplicative(F):
    rng = random.Random(11)
    for _ in range(20):
        if F is QQ:
            A, B = rand_rational(4, 4, rng), rand_rational(4, 4, rng)
        else:
            A, B = rand_matrix(F, 4, 4, rng), rand_matrix(F, 4, 4, rng)
        assert determinant(A @ B) == F.mul(determinant(A), determinant(B))


@pytest.mark.parametrize("F", [F5, PrimeField(101), QQ], ids=str)
def test_lu_and_inverse_round_trips(F):
    rng = random.Random(5)
    done = 0
    while done < 20:
        M = rand_rational(4, 4, rng) if F is QQ else rand_matrix(F, 4, 4, rng)
        try:
            L, U = lu_factor(M)
        except SingularLeadingMinor:
            continue
        assert L @ U == M
        assert L.is_lower_triangular() and U.is_upper_triangular()
        assert all(U.rows[i][i] == F.one for i in range(4))
        if not F.is_zero(determinant(M)):
            assert M @ invert(M) == Matrix.identity(F, 4)
        done += 1


def test_nullspace_is_orthogonal():
    M = Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])
    null = M.nullspace()
    assert len(null) == 2
    for v in null:
        assert all(sum(a * b for a, b in zip(r, v)) % 3 == 0 for r in M.rows)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bareiss_matches_cofactor(n):
    rng = random.Random(n)
    F = F3
    for _ in range(4):
        rows = [[Poly(F, [rng.randrange(3) for _ in range(rng.randint(0, 3))]) for _ in range(n)] for _ in range(n)]
        M = PolyMatrix(F, rows)
        assert det_bareiss(M) == det_cofactor(M)


def test_polymatrix_evaluate():
    W2 = wn_matrix(2, 3)
    assert W2.evaluate(F3, 2) == Matrix(F3, [[2, 0], [1, 2]])


# -- file format ---------------------------------------------------------------------

def test_matrix_file_round_trip():
    for M in (Matrix(QQ, [[1, Fraction(-1, 2)], [3, 0]]), Matrix(F7, [[1, 6, 3]]),
              Matrix(ExtensionField(2, [1, 1, 1]), [[(0, 1), (1, 1)], [(1, 0), (0, 0)]])):
        text = dumps_matrix(M, {"origin": "test"})
        back, meta = loads_matrix(text)
        assert back == M and meta == {"origin": "test"}


def test_matrix_file_errors():
    with pytest.raises(MatrixFormatError):
        loads_matrix("field 6\n1 1\n1\n")
    with pytest.raises(MatrixFormatError):
        loads_matrix("field 7\n2 2\n1 2\n")
    with pytest.raises(MatrixFormatError):
        loads_matrix("field 7\n1 2\n1\n")
    with pytest.raises(MatrixFormatError):
        loads_matrix("field Q\n1 1\nx\n")
