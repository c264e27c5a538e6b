"""Constructions of rate-1/d tree codes with a prescribed distance.

Random growth prepends one input symbol at a time: the new code sends
``(x_0, x_1..x_n)`` to ``(x_0 1^d, c(x_1..x_n) + x_0 v)`` for a random
``v``. Block-Toeplitz growth draws the whole first generator row at once.
Both verify every candidate exactly and resample on failure. Randomness is
derived from ``sha256(seed, step, attempt)`` so a run is reproducible and
independent of how attempts are spread over workers.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotFound, RetriesExhausted, TooLarge
from .matrix import Matrix
from .scalar import Field, field_of_order
from .treecode import BRUTEFORCE_LIMIT, DistanceReport, TreeCode, exceeds, min_rel_distance

BOUND_SLACK = 1e-12


def entropy(x: float, r: int) -> float:
    """``x log_r(r-1) - x log_r x - (1-x) log_r(1-x)``, continuous at 0 and 1."""
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    out = x * math.log(r - 1, r) if r > 2 else 0.0
    if 0 < x:
        out -= x * math.log(x, r)
    if x < 1:
        out -= (1 - x) * math.log(1 - x, r)
    return out


@dataclass(frozen=True)
class EntropyCheck:
    satisfied: bool
    margin: float
    value: float

    def __iter__(self):
        return iter((self.satisfied, self.margin))


def entropy_bound(q: int, d: int, delta) -> EntropyCheck:
    """Is ``log_r(2q) + Ent_r(delta) <= 1`` for ``r = q^d``?

    Unpacks as ``(satisfied, margin)``; ``value`` is the left-hand side.
    """
    if q < 2 or d < 1:
        raise DomainError("need q >= 2 and d >= 1")
    r = q ** d
    delta = Fraction(delta)
    if not 0 < delta < Fraction(r - 1, r):
        raise DomainError(f"delta = {delta} outside (0, {r - 1}/{r})")
    value = math.log(2 * q, r) + entropy(float(delta), r)
    return EntropyCheck(value <= 1 + BOUND_SLACK, 1 - value, value)


@dataclass(frozen=True)
class GrowthParams:
    q: int
    d: int
    delta: Fraction
    n: int
    seed: int
    retry_limit: int = 4096
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.retry_limit < 0:
            raise DomainError("retry_limit must be >= 0")
        r = self.q ** self.d
        if not 0 < self.delta < Fraction(r - 1, r):
            raise DomainError(f"delta = {self.delta} outside (0, {r - 1}/{r})")

    @property
    def field(self) -> Field:
        return field_of_order(self.q)


@dataclass
class GrowthResult:
    code: TreeCode
    distance: DistanceReport
    attempts: list[int]
    best_effort: bool
    entropy: EntropyCheck
    params: GrowthParams

    @property
    def failures(self) -> list[int]:
        """Rejected candidates per step (attempts minus the accepted one)."""
        return [a - 1 for a in self.attempts]

    def to_json(self) -> dict:
        return {
            "q": self.params.q, "d": self.params.d, "n": self.params.n,
            "delta_target": str(self.params.delta), "seed": self.params.seed,
            "delta": str(self.distance.delta), "verified": self.distance.delta > self.params.delta,
            "attempts": self.attempts, "best_effort": self.best_effort,
            "entropy_value": self.entropy.value, "entropy_margin": self.entropy.margin,
        }


def subseed(seed, step: int, attempt: int) -> int:
    h = hashlib.sha256(f"{seed}:{step}:{attempt}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def _rng(seed, step, attempt) -> random.Random:
    return random.Random(subseed(seed, step, attempt))


def _check_size(F: Field, n: int):
    if F.order ** n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"verification needs |F|^n = {F.order}^{n} <= {BRUTEFORCE_LIMIT}")


def _first_success(trial, jobs, workers):
    """Index of the first job whose trial returns a code; evaluated in batches of ``workers``."""
    if workers <= 1:
        for i, job in enumerate(jobs):
            out = trial(job)
            if out is not None:
                return i, out
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(jobs), workers):
            batch = jobs[start:start + workers]
            for i, out in enumerate(pool.map(trial, batch)):
                if out is not None:
                    return start + i, out
    return None


def _random_extension(job):
    code, seed, step, attempt, delta = job
    F, d, m = code.field, code.d, code.n
    rng = _rng(seed, step, attempt)
    v = [F.random_element(rng) for _ in range(d * m)]
    rows = [[F.one] * d + v] + [[F.zero] * d + list(r) for r in code.generator.rows]
    cand = TreeCode(F, m + 1, d, Matrix(F, rows, convert=False))
    # segments starting after block 1 are those of the old code
    return cand if exceeds(cand, delta, first_block_only=True) else None


def repetition_code(field: Field, d: int) -> TreeCode:
    return TreeCode(field, 1, d, Matrix(field, [[field.one] * d], convert=False))


def grow_random(params: GrowthParams) -> GrowthResult:
    F = params.field
    _check_size(F, params.n)
    check = entropy_bound(params.q, params.d, params.delta)
    code = repetition_code(F, params.d)
    attempts = []
    for step in range(1, params.n):
        jobs = [(code, params.seed, step, a, params.delta) for a in range(params.retry_limit + 1)]
        hit = _first_success(_random_extension, jobs, params.workers)
        if hit is None:
            raise RetriesExhausted(step, params.retry_limit + 1)
        attempts.append(hit[0] + 1)
        code = hit[1]
    return GrowthResult(code, min_rel_distance(code), attempts, not check.satisfied, check, params)


def toeplitz_code(field: Field, d: int, tail) -> TreeCode:
    """Block-Toeplitz code with first row ``(1^d, tail)``."""
    first = [field.one] * d + list(tail)
    n = len(first) // d
    rows = [[field.zero] * (d * i) + first[: d * (n - i)] for i in range(n)]
    return TreeCode(field, n, d, Matrix(field, rows, convert=False))


def _toeplitz_attempt(job):
    F, n, d, seed, attempt, delta = job
    rng = _rng(seed, 0, attempt)
    cand = toeplitz_code(F, d, [F.random_element(rng) for _ in range(d * (n - 1))])
    # shifts of the first row make every later start a prefix of the first
    return cand if exceeds(cand, delta, first_block_only=True) else None


def grow_toeplitz(params: GrowthParams) -> GrowthResult:
    F = params.field
    _check_size(F, params.n)
    check = entropy_bound(params.q, params.d, params.delta)
    jobs = [(F, params.n, params.d, params.seed, a, params.delta) for a in range(params.retry_limit + 1)]
    hit = _first_success(_toeplitz_attempt, jobs, params.workers)
    if hit is None:
        raise RetriesExhausted(0, params.retry_limit + 1)
    code = hit[1]
    return GrowthResult(code, min_rel_distance(code), [hit[0] + 1], not check.satisfied, check, params)


def exhaustive_short(q, d: int, delta, length: int) -> TreeCode:
    """First block-Toeplitz code (1^d, v_2..v_len), in lexicographic order of the
    tail over the field's element order, whose ``delta~`` exceeds ``delta``."""
    F = q if isinstance(q, Field) else field_of_order(q)
    delta = Fraction(delta)
    if length < 1:
        raise DomainError("length must be >= 1")
    r = F.order ** d
    if r ** (length - 1) > BRUTEFORCE_LIMIT:
        raise TooLarge(f"{r}^{length - 1} candidates")
    _check_size(F, length)
    elems = list(F.elements())
    for tail in itertools.product(elems, repeat=d * (length - 1)):
        cand = toeplitz_code(F, d, tail)
        if exceeds(cand, delta, first_block_only=True):
            return cand
    raise NotFound(f"no block-Toeplitz code over F_{F.order} with d={d}, length {length} beats {delta}")


def union_failure_bound(n: int) -> float:
    """Union bound on the probability that some growth step fails: sum of 2^-k, k = 1..n-1."""
    return sum(2.0 ** -k for k in range(1, n))
