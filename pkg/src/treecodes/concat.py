"""Binary tree codes from a tree code over F_(2^l), a short cyclic binary tree code and a block code.

Output blocks have ``d' = 2 d''`` bits. Odd bits carry shifted copies of the
first generator row of the short cyclic code ``a``, which keeps short
segments heavy. Even bits carry the long code, one symbol block at a time,
passed through the block code ``f``, which keeps long segments heavy.

Input bit ``i = l k + j`` (``1 <= j <= l``) adds ``x^(j-1) c(e_(k+1))`` to the
long codeword for ``k < n`` (bit ``j`` is the coefficient of ``x^(j-1)`` of
input symbol ``k+1``). For ``k = n`` it adds nothing on the even bits. Long
symbol block ``s`` lands on output blocks ``l s + 1 .. l s + l``.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphabetMismatch, InvalidTreeCode, LengthOverflow, RetriesExhausted, TooLarge
from .growth import exhaustive_short
from .matrix import Matrix
from .scalar import ExtensionField, PrimeField, field_of_order
from .treecode import TreeCode, min_rel_distance, mds_generator
from .ttn import nonsingularity_scan

F2 = PrimeField(2)
BLOCK_LIMIT = 10**6


# -- binary block codes ---------------------------------------------------------------

@dataclass(frozen=True)
class BlockCode:
    generator: Matrix
    min_weight: int

    @property
    def k(self):
        return self.generator.nrows

    @property
    def m(self):
        return self.generator.ncols

    @property
    def epsilon(self) -> Fraction:
        return Fraction(self.min_weight, self.m)

    def encode(self, bits) -> list[int]:
        out = [0] * self.m
        for b, row in zip(bits, self.generator.rows):
            if b:
                out = [x ^ y for x, y in zip(out, row)]
        return out


def block_min_weight(G: Matrix) -> int:
    """Least weight of a nonzero message's codeword, by Gray-code enumeration (0 if not injective)."""
    k = G.nrows
    if 2 ** k > BLOCK_LIMIT:
        raise TooLarge(f"2^{k} messages")
    masks = [int("".join(str(x) for x in r), 2) for r in G.rows]
    word, best = 0, G.ncols
    for t in range(1, 2 ** k):
        word ^= masks[(t & -t).bit_length() - 1]
        best = min(best, bin(word).count("1"))
    return best


def find_block_code(k: int, m: int, epsilon, seed=0, retry_limit: int = 1000) -> BlockCode:
    """Random ``k x m`` binary generator with relative minimum weight >= ``epsilon``."""
    epsilon = Fraction(epsilon)
    if 2 ** k > BLOCK_LIMIT:
        raise TooLarge(f"2^{k} messages")
    for attempt in range(retry_limit + 1):
        h = hashlib.sha256(f"block:{seed}:{attempt}".encode()).digest()
        rng = random.Random(int.from_bytes(h[:8], "big"))
        G = Matrix(F2, [[rng.randrange(2) for _ in range(m)] for _ in range(k)], convert=False)
        w = block_min_weight(G)
        if Fraction(w, m) >= epsilon:
            return BlockCode(G, w)
    raise RetriesExhausted("block", retry_limit + 1)


# -- the construction ----------------------------------------------------------------

@dataclass(frozen=True)
class ConcatSpec:
    long: TreeCode
    short: TreeCode
    block: BlockCode

    def __post_init__(self):
        L, a, f = self.long, self.short, self.block
        if not (isinstance(L.field, ExtensionField) and L.field.p == 2) and L.field != F2:
            raise AlphabetMismatch("long code must be over a field of characteristic 2")
        if a.field != F2 or f.generator.field != F2:
            raise AlphabetMismatch("short code and block code must be binary")
        if not a.is_block_toeplitz():
            raise InvalidTreeCode("short code must be cyclic (block-Toeplitz generator)")
        if a.n != self.ell:
            raise LengthOverflow(f"short code length {a.n} != symbol bits {self.ell}")
        if f.k != L.d * self.ell:
            raise LengthOverflow(f"block code input {f.k} != d l = {L.d * self.ell}")
        if f.m != a.d * self.ell:
            raise LengthOverflow(f"block code output {f.m} != d'' l = {a.d * self.ell}")

    @property
    def ell(self) -> int:
        F = self.long.field
        return F.k if isinstance(F, ExtensionField) else 1

    @property
    def n_out(self) -> int:
        return self.ell * (self.long.n + 1)

    @property
    def d_out(self) -> int:
        return 2 * self.short.d

    def header(self) -> dict:
        F = self.long.field
        mod = " ".join(map(str, F.modulus)) if isinstance(F, ExtensionField) else "0 1"
        return {"l": self.ell, "d": self.long.d, "d''": self.short.d, "d*": self.short.d,
                "n'": self.n_out, "d'": self.d_out, "extension": mod}


def _symbol_bits(F, s) -> list[int]:
    return list(s) if isinstance(F, ExtensionField) else [s]


def concatenate(spec: ConcatSpec) -> TreeCode:
    L, a, f = spec.long, spec.short, spec.block
    F = L.field
    ell, n, d, dd = spec.ell, L.n, L.d, a.d
    n_out, d_out = spec.n_out, spec.d_out
    first = a.generator.rows[0]
    x = F.generator if isinstance(F, ExtensionField) else F.one
    rows = []
    for i in range(1, n_out + 1):
        k, j = divmod(i - 1, ell)
        j += 1
        row = [0] * (d_out * n_out)
        for t in range(ell):
            b = i - 1 + t
            if b >= n_out:
                break
            for u in range(dd):
                row[d_out * b + 2 * u] = first[dd * t + u]
        if k < n:
            scale = F.pow(x, j - 1)
            word = [F.mul(scale, s) for s in L.encode([F.one if r == k else F.zero for r in range(n)])]
            for s in range(n):
                bits = [bit for sym in word[d * s: d * s + d] for bit in _symbol_bits(F, sym)]
                if not any(bits):
                    continue
                enc = f.encode(bits)
                for t in range(ell):
                    b = ell * (s + 1) + t
                    for u in range(dd):
                        row[d_out * b + 2 * u + 1] = enc[dd * t + u]
        rows.append(row)
    return TreeCode(F2, n_out, d_out, Matrix(F2, rows, convert=False), meta=spec.header())


def distance_floor(spec: ConcatSpec) -> tuple[Fraction, dict]:
    """``min(delta''/4, eps delta/6)`` with the components' measured parameters.

    ``delta''`` is the short code's F-weight distance, ``delta`` the long
    code's symbol-weight distance and ``eps`` the block code's relative
    minimum weight.
    """
    d_short = min_rel_distance(spec.short).delta
    d_long = min_rel_distance(spec.long, "Sigma").delta
    eps = spec.block.epsilon
    floor = min(d_short / 4, eps * d_long / 6)
    return floor, {"delta_short": d_short, "delta_long": d_long, "epsilon": eps}


def odd_projection_check(spec: ConcatSpec, code: TreeCode):
    """For every nonzero input, the odd bits from its first nonzero block on
    (at most ``l`` blocks) must equal the short code applied to the next ``l`` inputs.

    Returns ``(holds, first failing input or None)``.
    """
    ell, dd, n_out = spec.ell, spec.short.d, code.n
    if 2 ** n_out > BLOCK_LIMIT * 10:
        raise TooLarge(f"2^{n_out} inputs")
    for msg in itertools.product((0, 1), repeat=n_out):
        if not any(msg):
            continue
        k = msg.index(1)
        word = code.encode(msg)
        span = min(ell, n_out - k)
        window = list(msg[k:k + ell]) + [0] * (ell - span)
        expect = spec.short.encode(window)[: dd * span]
        odd = [word[code.d * b + 2 * u] for b in range(k, k + span) for u in range(dd)]
        if list(expect) != odd:
            return False, msg
    return True, None


def desk_instance(seed=0, ell: int = 2, n: int = 3, short_delta=Fraction(1, 2),
                  epsilon=Fraction(3, 8)) -> ConcatSpec:
    """Small complete instance: an MDS long code over F_(2^l) (``d = 2``), the first
    binary cyclic code beating ``short_delta`` with ``d'' = 4``, and a random block code."""
    F = field_of_order(2 ** ell)
    rng = random.Random(f"desk:{seed}")
    for _ in range(10000):
        T = Matrix(F, [[F.random_element(rng, nonzero=(i == j)) if j <= i else F.zero
                        for j in range(n)] for i in range(n)], convert=False)
        if nonsingularity_scan(T, "lower").holds:
            break
    else:
        raise RetriesExhausted("long", 10000)
    long = mds_generator(T)
    short = exhaustive_short(F2, 4, short_delta, ell)
    block = find_block_code(2 * ell, 4 * ell, epsilon, seed)
    return ConcatSpec(long, short, block)
