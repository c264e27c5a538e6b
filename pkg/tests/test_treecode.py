import random
from fractions import Fraction
from itertools import product

import pytest

from oracles import distance_from_generator, distance_from_pcheck, interleave_lists
from treecodes.errors import (
    InvalidTreeCode, NotTTN, PropertyStarViolated, RankDeficient, TooLarge, WrongRate, ZeroDiagonal,
)
from treecodes.matrix import Matrix
from treecodes.scalar import QQ, PrimeField
from treecodes.treecode import (
    NormalFormPcheck, TreeCode, exceeds, extract_triangular, generator_from_pcheck, interleave_pcheck, is_mds,
    mds_generator, min_rel_distance, normalize_pcheck, pcheck_from_generator, random_generator,
    random_normal_form, singleton_bound, swap_columns,
)
from treecodes.ttn import nonsingularity_scan

F2, F3, F5, F7 = PrimeField(2), PrimeField(3), PrimeField(5), PrimeField(7)
T_GOOD = Matrix(F3, [[1, 0], [1, 2]])


def same_row_space(A: Matrix, B: Matrix) -> bool:
    stacked = Matrix(A.field, list(A.rows) + list(B.rows), convert=False)
    return A.rank() == B.rank() == stacked.rank()


def lower_triangulars(F, n):
    positions = [(i, j) for i in range(n) for j in range(i + 1)]
    for values in product(list(F.elements()), repeat=len(positions)):
        rows = [[F.zero] * n for _ in range(n)]
        for (i, j), v in zip(positions, values):
            rows[i][j] = v
        yield Matrix(F, rows, convert=False)


# -- distance ------------------------------------------------------------------------

def test_repetition_code():
    code = TreeCode.from_generator(Matrix(F3, [[1, 1]]))
    assert min_rel_distance(code).delta == 1


def test_interleaved_good_code_distance():
    P = interleave_pcheck(T_GOOD)
    assert P == Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])
    code = generator_from_pcheck(NormalFormPcheck(P, 2, 2))
    assert min_rel_distance(code).delta == Fraction(3, 4)
    assert min_rel_distance(NormalFormPcheck(P, 2, 2), method="pcheck").delta == Fraction(3, 4)


def test_interleaved_identity_distance_and_witness():
    P = interleave_pcheck(Matrix.identity(F3, 2))
    nf = NormalFormPcheck(P, 2, 2)
    for method in ("bruteforce", "pcheck"):
        rep = min_rel_distance(nf, method=method)
        assert rep.delta == Fraction(1, 2)
        assert rep.segment == (1, 2, 0, 0)  # (1, -1, 0, 0) over F_3
        assert (rep.k, rep.l) == (0, 2)


def test_distance_report_json():
    rep = min_rel_distance(NormalFormPcheck(interleave_pcheck(T_GOOD), 2, 2))
    js = rep.to_json(F3)
    assert js["delta"] == "3/4" and js["weight_mode"] == "F" and js["method"] == "bruteforce"


def test_distance_errors():
    big = TreeCode.from_generator(Matrix.identity(PrimeField(101), 4).scale(1), d=1)
    with pytest.raises(TooLarge):
        min_rel_distance(big)
    with pytest.raises(TooLarge):
        min_rel_distance(TreeCode.from_generator(Matrix(QQ, [[1, 1]])))
    with pytest.raises(WrongRate):
        min_rel_distance(TreeCode.from_generator(Matrix(F3, [[1, 1, 1]])), method="pcheck")


def test_sigma_weight_repetition():
    code = TreeCode.from_generator(Matrix(F2, [[1, 0, 1, 1], [0, 0, 1, 0]]))
    assert min_rel_distance(code, "Sigma").delta == 1
    assert min_rel_distance(code, "F").delta == Fraction(1, 2)


def test_invalid_generators():
    with pytest.raises(InvalidTreeCode):
        TreeCode.from_generator(Matrix(F3, [[0, 0, 1, 1], [0, 0, 1, 0]]))
    with pytest.raises(InvalidTreeCode):
        TreeCode.from_generator(Matrix(F3, [[1, 1, 0, 0], [1, 0, 1, 0]]))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_distance_methods_match_oracle(p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(15):
        n = rng.randint(1, 3 if p < 5 else 2)
        nf = random_normal_form(F, n, 2, rng)
        raw = [list(r) for r in nf.matrix.rows]
        expected = distance_from_pcheck(raw, p)
        assert min_rel_distance(nf, method="bruteforce").delta == expected
        assert min_rel_distance(nf, method="pcheck").delta == expected


@pytest.mark.parametrize("p", [3, 5])
def test_pcheck_method_matches_bruteforce(p):
    F = PrimeField(p)
    rng = random.Random(100 + p)
    for _ in range(15):
        n = rng.randint(1, 5 if p == 3 else 4)
        nf = random_normal_form(F, n, 2, rng)
        a = min_rel_distance(nf, method="bruteforce")
        b = min_rel_distance(nf, method="pcheck")
        assert a.delta == b.delta


@pytest.mark.parametrize("d", [1, 2, 3])
def test_generator_distance_matches_oracle(d):
    rng = random.Random(d)
    for _ in range(10):
        code = random_generator(F3, rng.randint(1, 3), d, rng)
        raw = [list(r) for r in code.generator.rows]
        for mode, sigma in (("F", False), ("Sigma", True)):
            assert min_rel_distance(code, mode).delta == distance_from_generator(raw, 3, d, sigma)


def test_f_weight_below_sigma_weight():
    rng = random.Random(7)
    for _ in range(40):
        code = random_generator(rng.choice([F2, F3, F5]), rng.randint(1, 4), rng.randint(1, 3), rng)
        assert min_rel_distance(code, "F").delta <= min_rel_distance(code, "Sigma").delta


def test_parallel_bruteforce_matches_sequential():
    rng = random.Random(3)
    code = random_generator(F3, 6, 2, rng)
    assert min_rel_distance(code, workers=1) == min_rel_distance(code, workers=3)


def test_exceeds():
    code = generator_from_pcheck(NormalFormPcheck(interleave_pcheck(T_GOOD), 2, 2))
    assert exceeds(code, Fraction(1, 2))
    assert not exceeds(code, Fraction(3, 4))


# -- normal form ---------------------------------------------------------------------

def test_normalize_is_idempotent():
    P = Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])
    assert normalize_pcheck(P).matrix == P


def test_normalize_row_permuted():
    P = Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]])
    permuted = Matrix(F3, [[1, 0, 2, 1], [1, 1, 0, 0]])
    nf = normalize_pcheck(permuted)
    assert same_row_space(nf.matrix, P)
    assert nf.certificate["diagonal_block_ranks"] == [1, 1]


def test_normalize_random_mixtures():
    rng = random.Random(1)
    for _ in range(20):
        nf = random_normal_form(F5, 3, 2, rng)
        mix = Matrix(F5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        if mix.rank() < 3:
            continue
        again = normalize_pcheck(mix @ nf.matrix)
        assert same_row_space(again.matrix, nf.matrix)


def test_normalize_errors():
    with pytest.raises(PropertyStarViolated) as exc:
        normalize_pcheck(Matrix(F3, [[1, 1, 0, 0], [1, 2, 0, 0]]))
    assert exc.value.k == 1
    with pytest.raises(RankDeficient):
        normalize_pcheck(Matrix(F3, [[1, 1, 0, 0], [1, 1, 0, 0]]))


def test_generator_from_single_row_pcheck():
    for t in range(1, 5):
        code = generator_from_pcheck(NormalFormPcheck(Matrix(F5, [[t, 1]]), 2, 1))
        a, b = code.generator.rows[0]
        # proportional to (1, -t)
        assert F5.mul(a, F5.neg(t)) == b


def test_generator_from_pcheck_shapes():
    code = generator_from_pcheck(NormalFormPcheck(Matrix(F3, [[1, 1, 0, 0], [1, 0, 2, 1]]), 2, 2))
    assert (code.generator @ code.pcheck.T).is_zero()
    rng = random.Random(9)
    for _ in range(10):
        nf = random_normal_form(F3, 3, 3, rng)
        code = generator_from_pcheck(nf)
        assert code.d == 3 and code.generator.shape == (3, 9)
        assert (code.generator @ nf.matrix.T).is_zero()


@pytest.mark.parametrize("d", [2, 3])
def test_round_trips(d):
    rng = random.Random(d)
    for _ in range(3):
        nf = random_normal_form(F3, 3, d, rng)
        back = pcheck_from_generator(generator_from_pcheck(nf))
        assert same_row_space(back.matrix, nf.matrix)
    for _ in range(3):
        code = random_generator(F5, 3, d, rng)
        again = generator_from_pcheck(pcheck_from_generator(code))
        assert same_row_space(again.generator, code.generator)


# -- interleaving and extraction ------------------------------------------------------

def test_interleave_examples():
    assert interleave_pcheck(Matrix.identity(F3, 2)) == Matrix(F3, [[1, 1, 0, 0], [0, 0, 1, 1]])
    with pytest.raises(ZeroDiagonal) as exc:
        interleave_pcheck(Matrix(F3, [[1, 0], [1, 0]]))
    assert exc.value.i == 2


def test_interleave_matches_oracle():
    rng = random.Random(2)
    for _ in range(10):
        rows = [[rng.randrange(1, 7) if j <= i else 0 for j in range(4)] for i in range(4)]
        assert interleave_pcheck(Matrix(F7, rows)) == Matrix(F7, interleave_lists(rows, 7))


def test_extract_round_trip():
    T, swaps = extract_triangular(interleave_pcheck(T_GOOD))
    assert T == T_GOOD and swaps == []


def test_extract_records_swap():
    M = Matrix(F3, [[1, 0, 0, 0], [2, 1, 1, 1]])
    T, swaps = extract_triangular(M)
    assert swaps == [1]
    assert same_row_space(interleave_pcheck(T, strict=False), swap_columns(M, swaps))


def test_extract_random_f5():
    rng = random.Random(5)
    for _ in range(20):
        nf = random_normal_form(F5, 3, 2, rng)
        T, swaps = extract_triangular(nf)
        assert same_row_space(interleave_pcheck(T, strict=False), swap_columns(nf.matrix, swaps))


# -- MDS --------------------------------------------------------------------------------

def test_mds_examples():
    P = interleave_pcheck(T_GOOD)
    cols = is_mds(P, "columns")
    assert cols.holds and cols.checked == 5
    dist = is_mds(P, "distance")
    assert dist.holds and dist.distance.delta == Fraction(3, 4)


def test_identity_not_mds():
    P = interleave_pcheck(Matrix.identity(F3, 2))
    v = is_mds(P, "columns")
    assert not v.holds and v.witness == (1, 2)
    assert not is_mds(P, "distance").holds


def test_single_block_not_mds():
    v = is_mds(Matrix(F3, [[0, 1]]))
    assert not v.holds and v.witness == (1,)


def test_mds_generator_examples():
    for t in range(1, 7):
        code = mds_generator(Matrix(F7, [[t]]))
        assert code.generator == Matrix(F7, [[F7.inv(t), F7.neg(1)]])
    code = mds_generator(T_GOOD)
    assert (code.generator @ interleave_pcheck(T_GOOD).T).is_zero()
    assert min_rel_distance(code).delta == singleton_bound(2)
    with pytest.raises(NotTTN) as exc:
        mds_generator(Matrix.identity(F3, 2))
    assert exc.value.witness == ((2,), (1,))


@pytest.mark.parametrize("F,n", [(F3, 1), (F3, 2), (F3, 3), (F5, 1), (F5, 2), (F5, 3)], ids=str)
def test_ttn_iff_mds(F, n):
    for T in lower_triangulars(F, n):
        ttn = nonsingularity_scan(T, "lower").holds
        assert ttn == is_mds(interleave_pcheck(T, strict=False)).holds


def test_ttn_iff_mds_random_4x4_over_f7():
    rng = random.Random(4)
    hits = 0
    for _ in range(300):
        rows = [[rng.randrange(7) if j <= i else 0 for j in range(4)] for i in range(4)]
        T = Matrix(F7, rows)
        ttn = nonsingularity_scan(T, "lower").holds
        hits += ttn
        assert ttn == is_mds(interleave_pcheck(T, strict=False)).holds
    assert hits > 0


@pytest.mark.parametrize("F,n", [(F2, 1), (F2, 2), (F2, 3), (F2, 4), (F3, 1), (F3, 2), (F3, 3)], ids=str)
def test_singleton_bound_exhaustive(F, n):
    for T in lower_triangulars(F, n):
        nf = NormalFormPcheck(interleave_pcheck(T, strict=False), 2, n)
        assert min_rel_distance(nf).delta <= singleton_bound(n)


def test_singleton_bound_random():
    rng = random.Random(0)
    for F in (F5, F7):
        for _ in range(25):
            code = random_generator(F, rng.randint(1, 4), 2, rng)
            assert min_rel_distance(code).delta <= singleton_bound(code.n)


def test_columns_and_distance_verdicts_agree():
    rng = random.Random(8)
    for _ in range(40):
        nf = random_normal_form(F3, rng.randint(1, 4), 2, rng)
        assert is_mds(nf, "columns").holds == is_mds(nf, "distance").holds
