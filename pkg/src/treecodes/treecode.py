"""Linear tree codes of rate 1/d: generators, normal-form parity checks, distance, MDS.

A code ``c: F^n -> F^(dn)`` is held as its ``n x dn`` generator, block upper
triangular with ``1 x d`` blocks and nonzero diagonal blocks. Its
parity-check matrices in normal form are ``(d-1)n x dn``, lower block
triangular with ``(d-1) x d`` blocks of full rank on the diagonal.

Distances are exact :class:`~fractions.Fraction` values. ``delta~`` (weight
``F``) counts nonzero field coordinates and normalises by ``d(l-k)``;
``delta`` (weight ``Sigma``) counts nonzero blocks and normalises by ``l-k``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    InvalidTreeCode,
    NotNormalForm,
    NotTTN,
    PropertyStarViolated,
    RankDeficient,
    SingularMatrix,
    TooLarge,
    WrongRate,
    ZeroDiagonal,
)
from .matrix import Matrix, _nullspace, _rank, invert, solve
from .scalar import Field
from .ttn import _bounded_increasing, nonsingularity_scan

BRUTEFORCE_LIMIT = 10**7


@dataclass(frozen=True)
class TreeCode:
    field: Field
    n: int
    d: int
    generator: Matrix
    pcheck: Matrix | None = None
    meta: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        G = self.generator
        n, d = self.n, self.d
        if n < 1 or d < 1:
            raise InvalidTreeCode("need n >= 1 and d >= 1")
        if G.shape != (n, d * n):
            raise InvalidTreeCode(f"generator shape {G.shape} is not {n}x{d * n}")
        F = self.field
        for i, row in enumerate(G.rows):
            if any(not F.is_zero(x) for x in row[: d * i]):
                raise InvalidTreeCode(f"row {i + 1} is nonzero below the block diagonal")
            if all(F.is_zero(x) for x in row[d * i: d * i + d]):
                raise InvalidTreeCode(f"diagonal block {i + 1} is zero")
        if self.pcheck is not None:
            P = self.pcheck
            if P.shape != ((d - 1) * n, d * n):
                raise InvalidTreeCode(f"parity-check shape {P.shape} is not {(d - 1) * n}x{d * n}")
            if not (G @ P.transpose()).is_zero():
                raise InvalidTreeCode("generator is not orthogonal to the parity-check matrix")
            if P.rank() != (d - 1) * n:
                raise InvalidTreeCode("parity-check matrix is rank deficient")

    @classmethod
    def from_generator(cls, G: Matrix, d: int | None = None, pcheck: Matrix | None = None) -> "TreeCode":
        n = G.nrows
        if d is None:
            if G.ncols % n:
                raise InvalidTreeCode(f"{G.ncols} columns is not a multiple of {n} rows")
            d = G.ncols // n
        return cls(G.field, n, d, G, pcheck)

    def encode(self, message: Sequence) -> tuple:
        F = self.field
        msg = [F.convert(x) for x in message]
        out = [F.zero] * (self.d * self.n)
        for x, row in zip(msg, self.generator.rows):
            if F.is_zero(x):
                continue
            out = [F.add(o, F.mul(x, g)) for o, g in zip(out, row)]
        return tuple(out)

    def block(self, word: Sequence, i: int) -> tuple:
        """1-based block ``i`` of a length-dn word."""
        return tuple(word[self.d * (i - 1): self.d * i])

    def is_block_toeplitz(self) -> bool:
        """Row ``i`` is row 1 shifted right by ``i-1`` blocks (so the code is cyclic)."""
        G, d, n = self.generator.rows, self.d, self.n
        F = self.field
        for i in range(1, n):
            expected = (F.zero,) * (d * i) + G[0][: d * (n - i)]
            if G[i] != expected:
                return False
        return True


# -- distance -------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceReport:
    delta: Fraction
    k: int
    l: int
    segment: tuple
    weight_mode: str
    method: str
    message: tuple | None = None
    columns: tuple | None = None

    def to_json(self, field: Field | None = None) -> dict:
        fmt = (lambda x: field.format(x)) if field is not None else str
        w = {"k": self.k, "l": self.l, "segment": [fmt(x) for x in self.segment]}
        if self.message is not None:
            w["message"] = [fmt(x) for x in self.message]
        if self.columns is not None:
            w["columns"] = list(self.columns)
        return {"delta": str(self.delta), "weight_mode": self.weight_mode, "method": self.method, "witness": w}


def _weight(F, vec, d, sigma):
    if sigma:
        return sum(1 for b in range(0, len(vec), d) if any(not F.is_zero(x) for x in vec[b:b + d]))
    return sum(1 for x in vec if not F.is_zero(x))


def _bruteforce(code: TreeCode, sigma: bool = False, first_block_only: bool = False, threshold=None,
                starts=None):
    """Depth-first search over messages ``(0^k, 1, x_{k+2}, ..., x_n)``.

    Scaling a message by a nonzero constant keeps every weight, so the first
    nonzero input symbol is fixed to 1. With x_1..x_i fixed, blocks 1..i of
    the codeword are final; the ratio for ``l = i`` is settled at that depth.
    Returns ``(ratio, k, l, message)`` of the first minimum found (or the
    first ratio <= ``threshold`` when one is given).
    """
    F = code.field
    n, d = code.n, code.d
    G = code.generator.rows
    elems = list(F.elements())
    unit = d if not sigma else 1
    best = None
    msg = [F.zero] * n

    def visit(k, i, tail, wsum):
        # tail holds blocks i-1.. of the current partial codeword
        nonlocal best
        wsum += _weight(F, tail[:d], d, sigma)
        ratio = Fraction(wsum, unit * (i - k))
        if best is None or ratio < best[0]:
            best = (ratio, k, i, tuple(msg))
            if threshold is not None and ratio <= threshold:
                return True
        if i == n:
            return False
        rest = tail[d:]
        row = G[i][d * i:]
        for x in elems:
            msg[i] = x
            if F.is_zero(x):
                nxt = rest
            else:
                nxt = [F.add(a, F.mul(x, g)) for a, g in zip(rest, row)]
            if visit(k, i + 1, nxt, wsum):
                return True
        msg[i] = F.zero
        return False

    if starts is None:
        starts = range(1 if first_block_only else n)
    for k in starts:
        msg[:] = [F.zero] * n
        msg[k] = F.one
        if visit(k, k + 1, list(G[k][d * k:]), 0):
            break
    return best


def _check_bruteforce_size(F: Field, n: int):
    if not F.is_finite:
        raise TooLarge("brute force needs a finite field")
    if F.order ** n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"|F|^n = {F.order}^{n} exceeds {BRUTEFORCE_LIMIT}")


def min_rel_distance(code, weight_mode: str = "F", method: str = "bruteforce", workers: int = 1) -> DistanceReport:
    """Exact minimum relative distance with a witness.

    ``code`` is a :class:`TreeCode` or a :class:`NormalFormPcheck`.
    ``method="pcheck"`` uses the dependent-column characterisation on a
    rate-1/2 normal-form parity check and only supports weight ``F``.
    The witness segment is scaled so its first nonzero coordinate is 1.
    """
    sigma = weight_mode.lower() == "sigma"
    if weight_mode not in ("F", "Sigma", "sigma", "f"):
        raise ValueError("weight_mode must be 'F' or 'Sigma'")
    if method == "pcheck":
        if sigma:
            raise ValueError("the parity-check method computes the F-weight distance only")
        nf = code if isinstance(code, NormalFormPcheck) else _pcheck_of(code)
        if nf.d != 2:
            raise WrongRate(f"parity-check method needs d = 2, got d = {nf.d}")
        return _pcheck_distance(nf)
    if method != "bruteforce":
        raise ValueError(f"unknown method {method!r}")
    if isinstance(code, NormalFormPcheck):
        code = generator_from_pcheck(code)
    _check_bruteforce_size(code.field, code.n)
    if workers > 1 and code.n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_bruteforce_from, [(code, sigma, k) for k in range(code.n)]))
        # ties go to the smaller start block, as in the sequential order
        ratio, k, l, message = min(parts, key=lambda b: (b[0], b[1]))
    else:
        ratio, k, l, message = _bruteforce(code, sigma)
    F = code.field
    word = code.encode(message)
    seg = tuple(word[code.d * k: code.d * l])
    lead = F.inv(next(x for x in seg if not F.is_zero(x)))
    seg = tuple(F.mul(lead, x) for x in seg)
    message = tuple(F.mul(lead, x) for x in message)
    return DistanceReport(ratio, k, l, seg, "Sigma" if sigma else "F", "bruteforce", message)


def _bruteforce_from(args):
    code, sigma, k = args
    return _bruteforce(code, sigma, starts=[k])


def exceeds(code: TreeCode, delta, first_block_only: bool = False) -> bool:
    """``delta~(code) > delta``, stopping at the first light segment."""
    _check_bruteforce_size(code.field, code.n)
    ratio = _bruteforce(code, first_block_only=first_block_only, threshold=Fraction(delta))[0]
    return ratio > delta


def _pcheck_of(code: TreeCode) -> "NormalFormPcheck":
    if code.pcheck is not None:
        return normalize_pcheck(code.pcheck, code.d)
    return pcheck_from_generator(code)


def _first_dependent(F, sub_rows, cols) -> bool:
    """Is the first of ``cols`` (0-based into ``sub_rows``) in the span of the others?"""
    full = [[r[c] for c in cols] for r in sub_rows]
    if len(cols) == 1:
        return all(F.is_zero(x[0]) for x in full)
    others = [x[1:] for x in full]
    return _rank(F, full, len(cols)) == _rank(F, others, len(cols) - 1)


def _pcheck_distance(nf: "NormalFormPcheck") -> DistanceReport:
    """Least ``t / (2(l-k))`` over column sets ``2k < j_1 < ... < j_t <= 2l``, ``j_1 <= 2k+2``,
    whose first column depends on the rest inside rows ``k+1..l``."""
    M = nf.matrix
    F = M.field
    n = nf.n
    best = None
    for k in range(n):
        for l in range(k + 1, n + 1):
            sub = [M.rows[r] for r in range(k, l)]
            span = 2 * (l - k)
            found = None
            for t in range(1, span + 1):
                if best is not None and Fraction(t, span) >= best[0]:
                    break
                for j1 in (2 * k + 1, 2 * k + 2):
                    for rest in combinations(range(j1 + 1, 2 * l + 1), t - 1):
                        cols = (j1,) + rest
                        if _first_dependent(F, sub, [c - 1 for c in cols]):
                            found = cols
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                ratio = Fraction(len(found), span)
                if best is None or ratio < best[0]:
                    best = (ratio, k, l, found)
    ratio, k, l, cols = best
    seg = _dependency_segment(M, k, l, cols)
    return DistanceReport(ratio, k, l, seg, "F", "pcheck", None, cols)


def _dependency_segment(M: Matrix, k: int, l: int, cols) -> tuple:
    """Coordinates ``2k+1..2l`` of a codeword realising the dependency among ``cols``."""
    F = M.field
    sub = [[M.rows[r][c - 1] for c in cols] for r in range(k, l)]
    for v in _nullspace(F, sub, len(cols)):
        if not F.is_zero(v[0]):
            seg = [F.zero] * (2 * (l - k))
            for c, x in zip(cols, v):
                seg[c - 2 * k - 1] = x
            lead = F.inv(next(x for x in seg if not F.is_zero(x)))
            return tuple(F.mul(lead, x) for x in seg)
    raise AssertionError("dependent column set without a dependency")


# -- normal form ----------------------------------------------------------------

@dataclass(frozen=True)
class NormalFormPcheck:
    matrix: Matrix
    d: int
    n: int
    certificate: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        cert = check_normal_form(self.matrix, self.d)
        object.__setattr__(self, "certificate", cert)

    @property
    def field(self):
        return self.matrix.field


def check_normal_form(M: Matrix, d: int) -> dict:
    """Validate the lower block triangular shape; returns the block ranks."""
    if d < 2:
        raise NotNormalForm("parity checks need d >= 2")
    if M.ncols % d:
        raise NotNormalForm(f"{M.ncols} columns is not a multiple of d = {d}")
    n = M.ncols // d
    if M.nrows != (d - 1) * n:
        raise NotNormalForm(f"expected {(d - 1) * n} rows, got {M.nrows}")
    F = M.field
    ranks = []
    for b in range(n):
        rows = M.rows[(d - 1) * b: (d - 1) * (b + 1)]
        for r in rows:
            if any(not F.is_zero(x) for x in r[d * (b + 1):]):
                raise NotNormalForm(f"row block {b + 1} is nonzero above the block diagonal")
        diag = [r[d * b: d * (b + 1)] for r in rows]
        rk = _rank(F, diag, d)
        if rk != d - 1:
            raise NotNormalForm(f"diagonal block {b + 1} has rank {rk} < {d - 1}")
        ranks.append(rk)
    return {"n": n, "d": d, "diagonal_block_ranks": ranks}


def star_ranks(M: Matrix, d: int) -> list[int]:
    """Rank of the last ``d k`` columns, k = 1..n."""
    n = M.ncols // d
    out = []
    for k in range(1, n + 1):
        out.append(_rank(M.field, [r[d * (n - k):] for r in M.rows], d * k))
    return out


def normalize_pcheck(M: Matrix, d: int = 2) -> NormalFormPcheck:
    """Row-reduce a parity-check matrix into normal form (same row space).

    Works from the last ``d`` columns leftwards: at each block, ``d-1`` rows
    whose projections onto the block are independent stay as that block's
    rows; all other active rows are cleared on the block and move on.
    A matrix already in normal form comes back unchanged.
    """
    if M.ncols % d:
        raise NotNormalForm(f"{M.ncols} columns is not a multiple of d = {d}")
    n = M.ncols // d
    if M.nrows != (d - 1) * n:
        raise NotNormalForm(f"expected {(d - 1) * n} rows, got {M.nrows}")
    F = M.field
    if M.rank() != (d - 1) * n:
        raise RankDeficient(f"rank {M.rank()} < {(d - 1) * n}")
    for k, rk in enumerate(star_ranks(M, d), start=1):
        if rk != (d - 1) * k:
            raise PropertyStarViolated(k)

    active = [list(r) for r in M.rows]
    blocks = [None] * n
    for b in range(n - 1, -1, -1):
        lo, hi = d * b, d * (b + 1)
        pivots, rest = [], []
        for r in active:
            proj = [p[lo:hi] for p in pivots] + [r[lo:hi]]
            if len(pivots) < d - 1 and _rank(F, proj, d) == len(pivots) + 1:
                pivots.append(r)
            else:
                rest.append(r)
        if len(pivots) != d - 1:
            raise PropertyStarViolated(n - b)
        basis = Matrix(F, [list(col) for col in zip(*[p[lo:hi] for p in pivots])], convert=False)
        cleared = []
        for r in rest:
            if all(F.is_zero(x) for x in r[lo:hi]):
                cleared.append(r)
                continue
            try:
                coef = solve(basis, r[lo:hi])
            except SingularMatrix:
                raise PropertyStarViolated(n - b) from None
            for c, p in zip(coef, pivots):
                if not F.is_zero(c):
                    r = [F.sub(x, F.mul(c, y)) for x, y in zip(r, p)]
            cleared.append(r)
        blocks[b] = pivots
        active = cleared
    rows = [r for blk in blocks for r in blk]
    return NormalFormPcheck(Matrix(F, rows, convert=False), d, n)


def generator_from_pcheck(nf: NormalFormPcheck) -> TreeCode:
    """Generator built bottom-up: each new row is orthogonal to the last ``d(k+1)``
    columns of the parity check and independent of the rows already chosen."""
    M = nf.matrix
    F = M.field
    n, d = nf.n, nf.d
    rows = []  # generator rows n, n-1, ... as tails
    for k in range(n):
        width = d * (k + 1)
        sub = [r[d * n - width:] for r in M.rows]
        null = _nullspace(F, sub, width)
        prev = [[F.zero] * d + t for t in rows]
        chosen = None
        for v in null:
            if _rank(F, prev + [v], width) == len(prev) + 1:
                chosen = v
                break
        if chosen is None or all(F.is_zero(x) for x in chosen[:d]):
            raise InvalidTreeCode("parity check does not define a tree code")
        rows = [chosen] + [list(t) for t in prev]
        rows = [list(r) for r in rows]
    G = [[F.zero] * (d * n - len(r)) + r for r in rows]
    return TreeCode(F, n, d, Matrix(F, G, convert=False), M)


def pcheck_from_generator(code) -> NormalFormPcheck:
    """Basis of the dual of the code words, normalised."""
    if isinstance(code, Matrix):
        code = TreeCode.from_generator(code)
    G = code.generator
    null = _nullspace(code.field, G.rows, G.ncols)
    return normalize_pcheck(Matrix(code.field, null, convert=False), code.d)


# -- rate 1/2: interleaving, MDS ------------------------------------------------------

def interleave_pcheck(T: Matrix, strict: bool = True) -> Matrix:
    """``n x 2n``: column ``2j-1`` is column j of T, column ``2j`` is ``e_j``.

    ``strict=False`` admits zero diagonal entries (the result is still a
    normal form because the identity supplies each diagonal block).
    """
    if not T.is_square or not T.is_lower_triangular():
        raise ValueError("T must be square lower triangular")
    F = T.field
    n = T.nrows
    if strict:
        for i in range(n):
            if F.is_zero(T.rows[i][i]):
                raise ZeroDiagonal(i + 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(T.rows[i][j])
            row.append(F.one if i == j else F.zero)
        rows.append(row)
    return Matrix(F, rows, convert=False)


def interleave(odd: Matrix, even: Matrix) -> Matrix:
    """Columns alternate: odd ones from ``odd``, even ones from ``even``."""
    rows = []
    for r, s in zip(odd.rows, even.rows):
        row = []
        for x, y in zip(r, s):
            row += [x, y]
        rows.append(row)
    return Matrix(odd.field, rows, convert=False)


def _as_normal_form(M, d=2) -> NormalFormPcheck:
    if isinstance(M, NormalFormPcheck):
        return M
    return NormalFormPcheck(M, d, M.ncols // d)


def extract_triangular(M) -> tuple[Matrix, list[int]]:
    """Swap within column pairs until every ``m_{i,2i}`` is nonzero, then row-reduce to
    ``T`` interleaved with ``I_n``. Returns ``T`` and the 1-based blocks that were swapped."""
    nf = _as_normal_form(M, 2)
    if nf.d != 2:
        raise WrongRate("extraction is defined for rate 1/2")
    A = nf.matrix
    F = A.field
    n = nf.n
    rows = [list(r) for r in A.rows]
    swaps = []
    for i in range(n):
        if F.is_zero(rows[i][2 * i + 1]):
            swaps.append(i + 1)
            for r in rows:
                r[2 * i], r[2 * i + 1] = r[2 * i + 1], r[2 * i]
    odd = Matrix(F, [r[0::2] for r in rows], convert=False)
    even = Matrix(F, [r[1::2] for r in rows], convert=False)
    T = invert(even) @ odd
    return T, swaps


def swap_columns(M: Matrix, blocks: Sequence[int]) -> Matrix:
    rows = [list(r) for r in M.rows]
    for b in blocks:
        for r in rows:
            r[2 * b - 2], r[2 * b - 1] = r[2 * b - 1], r[2 * b - 2]
    return Matrix(M.field, rows, convert=False)


def mds_column_tuples(n: int):
    """Increasing ``j_1 < ... < j_n`` with ``j_i <= 2i``."""
    return _bounded_increasing([1] * n, [2 * i for i in range(1, n + 1)])


@dataclass(frozen=True)
class MdsVerdict:
    holds: bool
    method: str
    witness: tuple | None = None
    checked: int = 0
    distance: DistanceReport | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds, "method": self.method, "checked": self.checked,
               "witness": None if self.witness is None else {"cols": list(self.witness)}}
        if self.distance is not None:
            out["delta"] = str(self.distance.delta)
        return out


def is_mds(M, method: str = "columns") -> MdsVerdict:
    """MDS test for a rate-1/2 normal-form parity check.

    ``columns``: every column tuple with ``j_i <= 2i`` is independent.
    ``distance``: ``delta~ > 1/2`` (equivalently ``= (n+1)/(2n)``).
    """
    nf = _as_normal_form(M, 2)
    if nf.d != 2:
        raise WrongRate("MDS tree codes are defined for rate 1/2")
    A = nf.matrix
    F = A.field
    n = nf.n
    if method == "columns":
        if n > 14:
            raise TooLarge(f"column enumeration at n = {n}")
        from .matrix import _det

        checked = 0
        for cols in mds_column_tuples(n):
            checked += 1
            if F.is_zero(_det(F, [[r[c - 1] for c in cols] for r in A.rows])):
                return MdsVerdict(False, "columns", cols, checked)
        return MdsVerdict(True, "columns", None, checked)
    if method == "distance":
        if F.is_finite and F.order ** n <= BRUTEFORCE_LIMIT:
            rep = min_rel_distance(nf, method="bruteforce")
        else:
            rep = min_rel_distance(nf, method="pcheck")
        holds = rep.delta > Fraction(1, 2)
        return MdsVerdict(holds, "distance", None if holds else (rep.k, rep.l), 0, rep)
    raise ValueError(f"unknown method {method!r}")


def singleton_bound(n: int) -> Fraction:
    return Fraction(n + 1, 2 * n)


def mds_generator(T: Matrix) -> TreeCode:
    """Generator ``(T^-1)^T`` interleaved with ``-I_n`` for a lower TTN matrix ``T``."""
    v = nonsingularity_scan(T, "lower")
    if not v.holds:
        raise NotTTN(v.witness)
    F = T.field
    n = T.nrows
    S = invert(T).transpose()
    minus_i = Matrix.identity(F, n).scale(-1)
    G = interleave(S, minus_i)
    return TreeCode(F, n, 2, G, interleave_pcheck(T))


# -- random instances --------------------------------------------------------------

def random_generator(field: Field, n: int, d: int, rng) -> TreeCode:
    """Block upper triangular generator with uniformly random nonzero diagonal blocks."""
    F = field
    rows = []
    for i in range(n):
        while True:
            diag = [F.random_element(rng) for _ in range(d)]
            if any(not F.is_zero(x) for x in diag):
                break
        tail = [F.random_element(rng) for _ in range(d * (n - i - 1))]
        rows.append([F.zero] * (d * i) + diag + tail)
    return TreeCode(F, n, d, Matrix(F, rows, convert=False))


def random_normal_form(field: Field, n: int, d: int, rng) -> NormalFormPcheck:
    """Lower block triangular ``(d-1)n x dn`` matrix with full-rank diagonal blocks."""
    F = field
    rows = []
    for b in range(n):
        while True:
            diag = [[F.random_element(rng) for _ in range(d)] for _ in range(d - 1)]
            if _rank(F, diag, d) == d - 1:
                break
        for r in range(d - 1):
            left = [F.random_element(rng) for _ in range(d * b)]
            rows.append(left + diag[r] + [F.zero] * (d * (n - b - 1)))
    return NormalFormPcheck(Matrix(F, rows, convert=False), d, n)
