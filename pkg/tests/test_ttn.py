import random
from itertools import combinations

import pytest

from oracles import admissible_pairs, first_singular_pair, leibniz_det
from treecodes.errors import NonIntegralFamily, SearchExhausted
from treecodes.families import binomial_lower, cauchy, pascal
from treecodes.matrix import Matrix, invert
from treecodes.scalar import QQ, PrimeField
from treecodes.treecode import mds_column_tuples
from treecodes.ttn import (
    admissible_tuples, band_scan, count_admissible, counterexample_search, lu_property_check,
    nonsingularity_scan, recheck_witness, scan_primes,
)

L3 = binomial_lower(2)  # [[1,0,0],[1,1,0],[1,2,1]]


def random_lower(F, n, rng, nonzero_diag=True):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j > i:
                row.append(F.zero)
            elif j == i and nonzero_diag:
                row.append(F.random_element(rng, nonzero=True))
            else:
                row.append(F.random_element(rng))
        rows.append(row)
    return Matrix(F, rows, convert=False)


def test_admissible_tuples_examples():
    assert list(admissible_tuples(1, "lower")) == [((1,), (1,))]
    assert list(admissible_tuples(2, "lower")) == [((1,), (1,)), ((2,), (1,)), ((2,), (2,)), ((1, 2), (1, 2))]
    assert count_admissible(3, "lower", size=2) == 6


@pytest.mark.parametrize("mode", ["lower", "upper", "all"])
@pytest.mark.parametrize("n", range(1, 6))
def test_admissible_tuples_match_brute_force(n, mode):
    assert list(admissible_tuples(n, mode)) == admissible_pairs(n, mode)


def test_binomial_scans():
    assert nonsingularity_scan(L3, "lower").holds
    v = nonsingularity_scan(L3.to_field(PrimeField(2)), "lower")
    assert not v.holds and v.witness == ((3,), (2,))
    v = nonsingularity_scan(Matrix.identity(QQ, 2), "lower")
    assert v.witness == ((2,), (1,))


def test_verdict_json():
    v = nonsingularity_scan(L3.to_field(PrimeField(2)), "lower")
    assert v.to_json() == {"holds": False, "witness": {"rows": [3], "cols": [2]}, "minors_checked": 5,
                           "mode": "lower"}


def test_cryer_on_pascal():
    rep = lu_property_check(pascal(4), "cryer-ttn")
    assert rep.holds
    assert rep.verdicts["L"].holds and rep.verdicts["U"].holds
    assert rep.positive == {"L": True, "U": True}


def test_band_on_cauchy():
    F = PrimeField(101)
    C = cauchy([1, 2, 3, 4], [50, 60, 70, 80], F)
    assert lu_property_check(C, "band").holds


@pytest.mark.parametrize("n", range(1, 7))
def test_band_on_identity(n):
    # I_n is not totally nonsingular: the 1x1 band block L[2|1] is already zero
    rep = lu_property_check(Matrix.identity(QQ, n), "band")
    if n == 1:
        assert rep.holds
    else:
        assert rep.verdicts["L"].witness == ((2,), (1,))


def test_band_scan_finds_zero_entry():
    v = band_scan(Matrix(QQ, [[1, 0], [0, 1]]))
    assert v.witness == ((2,), (1,))


def test_counterexample():
    res = counterexample_search(seed=0, bound=3)
    assert res.tns.holds
    assert nonsingularity_scan(res.matrix, "all").holds
    assert not res.l_verdict.holds and res.l_verdict.witness == ((3, 4), (1, 3))
    assert [list(r[:3]) for r in res.L.rows] == [[1, 0, 0], [1, 2, 0], [2, 3, 2], [3, 4, 3]]
    assert res.L @ res.U == res.matrix


def test_counterexample_other_seed():
    res = counterexample_search(seed=5, bound=3)
    assert res.tns.holds and res.l_verdict.witness == ((3, 4), (1, 3))


def test_counterexample_bound_zero():
    with pytest.raises(SearchExhausted):
        counterexample_search(seed=0, bound=0)


def test_scan_primes_binomial():
    rep = scan_primes("binomial", 2, 2, 7)
    assert [e.p for e in rep.entries] == [2, 3, 5, 7]
    assert not rep.entries[0].holds and rep.entries[0].witness == ((3,), (2,))
    assert all(e.holds for e in rep.entries[1:])
    assert rep.minimal_prime == 3


def test_scan_primes_custom_all_mode():
    rep = scan_primes([[1, 1], [1, 2]], 1, 2, 2, "all")
    assert rep.entries[0].witness == ((2,), (2,))
    assert rep.minimal_prime is None


def test_scan_primes_empty_range():
    rep = scan_primes("pascal", 3, 24, 28)
    assert rep.entries == () and rep.minimal_prime is None


def test_scan_primes_rejects_fractions():
    from fractions import Fraction

    with pytest.raises(NonIntegralFamily):
        scan_primes([[1, Fraction(1, 2)], [0, 1]], 1, 2, 5)
    with pytest.raises(NonIntegralFamily):
        scan_primes(Matrix(PrimeField(5), [[1]]), 0, 2, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lower_scan_matches_oracle(p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(40):
        n = rng.randint(1, 5)
        T = random_lower(F, n, rng, nonzero_diag=rng.random() < 0.8)
        raw = [list(r) for r in T.rows]
        v = nonsingularity_scan(T, "lower")
        expected = first_singular_pair(raw, "lower", p)
        assert v.witness == expected
        # the admissible minors are exactly the ones not forced to vanish by triangularity
        forced_nonzero_failures = [
            (r, c) for s in range(1, n + 1) for r in combinations(range(1, n + 1), s)
            for c in combinations(range(1, n + 1), s)
            if leibniz_det([[raw[i - 1][j - 1] for j in c] for i in r], p) == 0
            and all(cj <= ri for ri, cj in zip(r, c))
        ]
        assert v.holds == (not forced_nonzero_failures)


@pytest.mark.parametrize("n", range(1, 7))
def test_inverse_of_ttn_is_upper_ttn(n):
    for p in (7, 11, 13):
        F = PrimeField(p)
        rng = random.Random(n * p)
        for _ in range(30):
            T = random_lower(F, n, rng)
            if nonsingularity_scan(T, "lower").holds:
                assert nonsingularity_scan(invert(T), "lower").holds
                assert nonsingularity_scan(invert(T).T, "upper").holds


@pytest.mark.parametrize("n", range(1, 8))
def test_column_tuple_count_matches_enumeration(n):
    brute = [c for c in combinations(range(1, 2 * n + 1), n) if all(j <= 2 * i for i, j in enumerate(c, start=1))]
    assert list(mds_column_tuples(n)) == brute


def test_witness_recheck():
    for p in (2, 3, 5, 7):
        rep = scan_primes("pascal", 4, p, p, "all")
        e = rep.entries[0]
        if not e.holds:
            assert recheck_witness(pascal(4).to_field(PrimeField(p)), e.witness)


def test_scan_independent_of_workers():
    M = pascal(6).to_field(PrimeField(13))
    one = nonsingularity_scan(M, "all", workers=1)
    many = nonsingularity_scan(M, "all", workers=3)
    assert one == many
    assert scan_primes("pascal", 5, 2, 30, "all", workers=1) == scan_primes("pascal", 5, 2, 30, "all", workers=3)
