"""Triangular / total nonsingularity: admissible minors, verdicts with witnesses, LU facts.

Admissible index pairs ``(rows, cols)`` are enumerated by size first, then
rows, then columns, all lexicographically; a failing scan reports the first
singular pair in that order, so witnesses do not depend on how the work is
split between processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .errors import NonIntegralFamily, SearchExhausted
from .families import binomial_lower, pascal
from .matrix import Matrix, _det, lu_factor, minor
from .scalar import PrimeField, QQ, primes_between

MODES = ("lower", "upper", "all")


@dataclass(frozen=True)
class NonsingularityVerdict:
    holds: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    minors_checked: int
    mode: str = "lower"

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the verdict fails")

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        w = None if self.witness is None else {"rows": list(self.witness[0]), "cols": list(self.witness[1])}
        return {"holds": self.holds, "witness": w, "minors_checked": self.minors_checked, "mode": self.mode}


def _bounded_increasing(lo: Sequence[int], hi: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Strictly increasing tuples ``t`` with ``lo[r] <= t[r] <= hi[r]``, lexicographically."""
    s = len(lo)

    def rec(r, prev):
        if r == s:
            yield ()
            return
        for v in range(max(lo[r], prev + 1), hi[r] + 1):
            for rest in rec(r + 1, v):
                yield (v,) + rest

    return rec(0, 0)


def admissible_tuples(n: int, mode: str = "lower", ncols: int | None = None):
    """Yield admissible ``(rows, cols)`` pairs of 1-based indices for an n x ncols matrix.

    ``lower``: ``j_r <= i_r``; ``upper``: ``j_r >= i_r``; ``all``: every square submatrix.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    m = n if ncols is None else ncols
    for s in range(1, min(n, m) + 1):
        for rows in combinations(range(1, n + 1), s):
            if mode == "lower":
                cols_iter = _bounded_increasing([1] * s, rows)
            elif mode == "upper":
                cols_iter = _bounded_increasing(rows, [m] * s)
            else:
                cols_iter = combinations(range(1, m + 1), s)
            for cols in cols_iter:
                yield rows, cols


def count_admissible(n: int, mode: str = "lower", size: int | None = None) -> int:
    return sum(1 for r, _ in admissible_tuples(n, mode) if size is None or len(r) == size)


def _first_failure(M: Matrix, tuples, positive: bool):
    rows_raw, F = M.rows, M.field
    for idx, (rows, cols) in enumerate(tuples):
        d = _det(F, [[rows_raw[i - 1][j - 1] for j in cols] for i in rows])
        if F.is_zero(d) or (positive and d <= 0):
            return idx
    return None


def _chunk_job(args):
    M, tuples, positive, offset = args
    idx = _first_failure(M, tuples, positive)
    return None if idx is None else idx + offset


def nonsingularity_scan(M: Matrix, mode: str = "lower", workers: int = 1,
                        positive: bool = False) -> NonsingularityVerdict:
    """Check every admissible minor of ``M`` for the given mode.

    ``positive=True`` (rationals only) additionally demands every admissible
    minor be > 0, i.e. (triangular) total positivity. ``minors_checked`` is
    the number of minors up to and including the witness in enumeration
    order, so it is the same for any ``workers``.
    """
    if mode in ("lower", "upper") and not M.is_square:
        raise ValueError("triangular modes need a square matrix")
    if positive and M.field != QQ:
        raise ValueError("positivity only makes sense over Q")
    tuples = list(admissible_tuples(M.nrows, mode, M.ncols))
    if workers <= 1 or len(tuples) < 256:
        idx = _first_failure(M, tuples, positive)
    else:
        size = -(-len(tuples) // (workers * 4))
        jobs = [(M, tuples[k:k + size], positive, k) for k in range(0, len(tuples), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = [h for h in ex.map(_chunk_job, jobs) if h is not None]
        idx = min(hits) if hits else None
    if idx is None:
        return NonsingularityVerdict(True, None, len(tuples), mode)
    return NonsingularityVerdict(False, tuples[idx], idx + 1, mode)


def is_ttn(M: Matrix, mode: str = "lower") -> bool:
    return nonsingularity_scan(M, mode).holds


def recheck_witness(M: Matrix, witness) -> bool:
    """True when the witnessed minor really vanishes."""
    rows, cols = witness
    return M.field.is_zero(minor(M, rows, cols))


# -- LU properties --------------------------------------------------------------

@dataclass
class LuReport:
    property: str
    holds: bool
    verdicts: dict = field(default_factory=dict)
    positive: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "positive": dict(self.positive),
        }


def band_scan(L: Matrix) -> NonsingularityVerdict:
    """``L[i_1..i_k | j..j+k-1]`` nonsingular for all ``1 <= j <= i_1 < ... < i_k <= n``."""
    n = L.nrows
    F = L.field
    checked = 0
    for k in range(1, n + 1):
        for j in range(1, n - k + 2):
            cols = tuple(range(j, j + k))
            for rows in combinations(range(j, n + 1), k):
                checked += 1
                if F.is_zero(minor(L, rows, cols)):
                    return NonsingularityVerdict(False, (rows, cols), checked, "band")
    return NonsingularityVerdict(True, None, checked, "band")


def lu_property_check(M: Matrix, property: str = "cryer-ttn") -> LuReport:
    """Check an LU-derived property; ``M = L U`` with unit-diagonal ``U``.

    ``cryer-ttn``: L lower-TTN and U upper-TTN (over Q also their positivity).
    ``band``: the band submatrices of L are nonsingular.
    """
    L, U = lu_factor(M)
    if property == "cryer-ttn":
        vl = nonsingularity_scan(L, "lower")
        vu = nonsingularity_scan(U, "upper")
        rep = LuReport(property, vl.holds and vu.holds, {"L": vl, "U": vu})
        if M.field == QQ:
            rep.positive = {
                "L": nonsingularity_scan(L, "lower", positive=True).holds,
                "U": nonsingularity_scan(U, "upper", positive=True).holds,
            }
        return rep
    if property == "band":
        vb = band_scan(L)
        return LuReport(property, vb.holds, {"L": vb})
    raise ValueError(f"unknown property {property!r}")


# -- the 4x4 counterexample -----------------------------------------------------

@dataclass
class CounterexampleResult:
    matrix: Matrix
    L: Matrix
    U: Matrix
    params: dict
    tns: NonsingularityVerdict
    l_verdict: NonsingularityVerdict
    tried: int

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "L": self.L.tolist(),
            "params": {k: str(v) for k, v in self.params.items()},
            "tns": self.tns.to_json(),
            "l_factor_lower": self.l_verdict.to_json(),
            "tried": self.tried,
        }


def small_rationals(bound: int) -> list[Fraction]:
    """``p/q`` with ``|p| <= bound``, ``1 <= q <= bound``, ordered by height then size."""
    seen = set()
    out = []
    for p in range(-bound, bound + 1):
        for q in range(1, bound + 1):
            v = Fraction(p, q)
            if v not in seen:
                seen.add(v)
                out.append(v)
    out.sort(key=lambda v: (max(abs(v.numerator), v.denominator), v.denominator, abs(v), v < 0))
    return out


def _diagonal_tuples(width: int, count: int) -> Iterator[tuple[int, ...]]:
    """All index tuples in ``range(count)**width``, ordered by index sum."""
    def rec(w, total):
        if w == 1:
            if total < count:
                yield (total,)
            return
        for first in range(min(total, count - 1) + 1):
            for rest in rec(w - 1, total - first):
                yield (first,) + rest

    for t in range(width * (count - 1) + 1):
        yield from rec(width, t)


def _fact_template(a, b, c, d, e, f) -> list[list[Fraction]]:
    return [
        [1, a, b, c],
        [1, 2 + a, 2 + b, d],
        [2, 3 + 2 * a, 5 + 2 * b, e],
        [3, 4 + 3 * a, 7 + 3 * b, f],
    ]


def counterexample_search(seed: int = 0, bound: int = 3) -> CounterexampleResult:
    """Find a totally nonsingular rational 4x4 matrix whose L-factor is not TTN.

    Fills the template whose elimination leaves the singular block
    ``[[2, 2], [3, 3]]`` in rows (3, 4), columns (1, 3) of L. First ``a, b``
    making the 4x3 part totally nonsingular, then ``c..f`` for the last column,
    each over small rationals of height <= ``bound`` in order of index sum.
    ``seed`` rotates the candidate list.
    """
    cands = small_rationals(bound) if bound > 0 else []
    if not cands:
        raise SearchExhausted(bound)
    k = seed % len(cands)
    cands = cands[k:] + cands[:k]
    tried = 0
    for ia, ib in _diagonal_tuples(2, len(cands)):
        a, b = cands[ia], cands[ib]
        tried += 1
        left = Matrix(QQ, [r[:3] for r in _fact_template(a, b, 0, 0, 0, 0)])
        if not nonsingularity_scan(left, "all").holds:
            continue
        for ic, id_, ie, if_ in _diagonal_tuples(4, len(cands)):
            c, d, e, f = cands[ic], cands[id_], cands[ie], cands[if_]
            tried += 1
            M = Matrix(QQ, _fact_template(a, b, c, d, e, f))
            tns = nonsingularity_scan(M, "all")
            if not tns.holds:
                continue
            L, U = lu_factor(M)
            lv = nonsingularity_scan(L, "lower")
            return CounterexampleResult(M, L, U, dict(a=a, b=b, c=c, d=d, e=e, f=f), tns, lv, tried)
        # every (c..f) choice failed for this (a, b): try the next pair
    raise SearchExhausted(bound)


# -- prime scans ------------------------------------------------------------------

@dataclass(frozen=True)
class ScanEntry:
    p: int
    holds: bool
    witness: tuple | None
    minors_checked: int

    def to_json(self) -> dict:
        w = None if self.witness is None else {"rows": list(self.witness[0]), "cols": list(self.witness[1])}
        return {"p": self.p, "holds": self.holds, "witness": w, "minors_checked": self.minors_checked}


@dataclass(frozen=True)
class ScanReport:
    family: str
    n: int
    mode: str
    entries: tuple[ScanEntry, ...]

    @property
    def minimal_prime(self) -> int | None:
        return next((e.p for e in self.entries if e.holds), None)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "mode": self.mode,
            "entries": [e.to_json() for e in self.entries],
            "minimal_prime": self.minimal_prime,
        }


def family_matrix(family, n: int) -> Matrix:
    if isinstance(family, str):
        if family == "pascal":
            return pascal(n)
        if family == "binomial":
            return binomial_lower(n)
        raise ValueError(f"unknown family {family!r}")
    M = family if isinstance(family, Matrix) else Matrix(QQ, family)
    if M.field != QQ:
        raise NonIntegralFamily(f"prime scans need an integer matrix over Q, got one over {M.field}")
    for r in M.rows:
        for x in r:
            if x.denominator != 1:
                raise NonIntegralFamily(f"entry {x} is not an integer")
    return M


def _scan_one(args):
    M, p, mode = args
    v = nonsingularity_scan(M.to_field(PrimeField(p)), mode)
    return ScanEntry(p, v.holds, v.witness, v.minors_checked)


def scan_primes(family, n: int, p_min: int, p_max: int, mode: str = "lower",
                workers: int = 1) -> ScanReport:
    """Reduce an integer matrix modulo each prime in ``[p_min, p_max]`` and scan it.

    ``family`` is ``"pascal"`` (P_n), ``"binomial"`` (L_n), or an integer
    matrix. Output is independent of ``workers``.
    """
    M = family_matrix(family, n)
    primes = primes_between(p_min, p_max)
    jobs = [(M, p, mode) for p in primes]
    if workers <= 1 or len(jobs) < 2:
        entries = [_scan_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            entries = list(ex.map(_scan_one, jobs))
    name = family if isinstance(family, str) else "custom"
    return ScanReport(name, n, mode, tuple(entries))
