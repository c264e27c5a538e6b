"""Two-node Birkhoff interpolation and its derivative matrices.

Find ``f`` of degree ``< p + q`` from ``f^(j_s)(a) = A_s`` and
``f^(k_t)(b) = B_t``. Over fields of small characteristic the ordinary
derivative loses information, so Hasse derivatives ``H^j(x^i) = C(i,j) x^(i-j)``
are used by default there; over the rationals the default is the ordinary one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import NodesEqual, SingularMatrix, SingularSystem, TooLarge
from .matrix import Matrix, _rank, solve
from .poly import Poly, monomial_derivative_at
from .scalar import Field, QQ
from .treecode import is_mds


def _kind(field: Field, kind: str | None) -> str:
    if kind is None:
        return "hasse" if field.is_finite else "standard"
    if kind not in ("standard", "hasse"):
        raise ValueError("derivative kind must be 'standard' or 'hasse'")
    return kind


def _nodes(field: Field, a, b):
    a, b = field.convert(a), field.convert(b)
    if a == b:
        raise NodesEqual(f"nodes coincide: {field.format(a)}")
    return a, b


def _check_orders(orders: Sequence[int], name: str) -> tuple:
    orders = tuple(int(j) for j in orders)
    if any(j < 0 for j in orders) or any(x >= y for x, y in zip(orders, orders[1:])):
        raise ValueError(f"{name} must be strictly increasing and nonnegative")
    return orders


@dataclass(frozen=True)
class BirkhoffInstance:
    a: object
    b: object
    jset: tuple
    kset: tuple
    left_values: tuple
    right_values: tuple

    def __post_init__(self):
        object.__setattr__(self, "jset", _check_orders(self.jset, "jset"))
        object.__setattr__(self, "kset", _check_orders(self.kset, "kset"))
        object.__setattr__(self, "left_values", tuple(self.left_values))
        object.__setattr__(self, "right_values", tuple(self.right_values))
        if len(self.left_values) != len(self.jset) or len(self.right_values) != len(self.kset):
            raise ValueError("one value per derivative order is required")
        if self.a == self.b:
            raise NodesEqual("nodes coincide")

    @property
    def size(self) -> int:
        return len(self.jset) + len(self.kset)


def polya_condition(jset: Sequence[int], kset: Sequence[int]) -> bool:
    """At least ``s+1`` prescribed orders ``<= s`` for every ``s = 0 .. p+q-1``."""
    jset, kset = _check_orders(jset, "jset"), _check_orders(kset, "kset")
    total = len(jset) + len(kset)
    for s in range(total):
        if sum(1 for j in jset if j <= s) + sum(1 for k in kset if k <= s) < s + 1:
            return False
    return True


def birkhoff_matrix(a, b, jset, kset, field: Field = QQ, derivative_kind: str | None = None) -> Matrix:
    """Row ``i`` (for ``x^i``, ``i = 0 .. p+q-1``): derivatives at ``a`` for ``jset``, then at ``b`` for ``kset``."""
    kind = _kind(field, derivative_kind)
    a, b = _nodes(field, a, b)
    jset, kset = _check_orders(jset, "jset"), _check_orders(kset, "kset")
    N = len(jset) + len(kset)
    if N == 0:
        raise ValueError("no conditions given")
    std = kind == "standard"
    rows = [[monomial_derivative_at(field, i, j, a, std) for j in jset]
            + [monomial_derivative_at(field, i, k, b, std) for k in kset] for i in range(N)]
    return Matrix(field, rows, convert=False)


def solve_birkhoff(instance: BirkhoffInstance, field: Field = QQ, derivative_kind: str | None = None) -> Poly:
    """The unique interpolant of degree ``< p+q``; :class:`SingularSystem` if there is none or many."""
    M = birkhoff_matrix(instance.a, instance.b, instance.jset, instance.kset, field, derivative_kind)
    values = [field.convert(v) for v in instance.left_values + instance.right_values]
    try:
        coeffs = solve(M.transpose(), values)
    except SingularMatrix:
        raise SingularSystem(f"orders {instance.jset} at a, {instance.kset} at b") from None
    return Poly(field, coeffs)


def is_uniquely_solvable(a, b, jset, kset, field: Field = QQ, derivative_kind: str | None = None) -> bool:
    M = birkhoff_matrix(a, b, jset, kset, field, derivative_kind)
    return _rank(field, M.rows, M.ncols) == M.nrows


def derivative_pcheck(a, b, n: int, field: Field = QQ, derivative_kind: str | None = None) -> Matrix:
    """``(n+1) x 2(n+1)``: entry ``(i, 2j)`` is ``D^j(x^i)`` at ``a`` and ``(i, 2j+1)`` at ``b`` (0-based)."""
    kind = _kind(field, derivative_kind)
    a, b = _nodes(field, a, b)
    std = kind == "standard"
    rows = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            row.append(monomial_derivative_at(field, i, j, a, std))
            row.append(monomial_derivative_at(field, i, j, b, std))
        rows.append(row)
    return Matrix(field, rows, convert=False)


def normalize_nodes(instance: BirkhoffInstance, field: Field = QQ) -> BirkhoffInstance:
    """The same problem for ``g(y) = f(b + (a-b) y)``, whose nodes are 1 and 0.

    Derivatives of order ``j`` pick up ``(a-b)^j`` (ordinary and Hasse alike).
    Map the solution back with :func:`denormalize`.
    """
    a, b = _nodes(field, instance.a, instance.b)
    h = field.sub(a, b)
    left = tuple(field.mul(field.pow(h, j), field.convert(v)) for j, v in zip(instance.jset, instance.left_values))
    right = tuple(field.mul(field.pow(h, k), field.convert(v)) for k, v in zip(instance.kset, instance.right_values))
    return BirkhoffInstance(field.one, field.zero, instance.jset, instance.kset, left, right)


def denormalize(g: Poly, a, b) -> Poly:
    """``f(x) = g((x - b) / (a - b))``."""
    F = g.field
    a, b = _nodes(F, a, b)
    hinv = F.inv(F.sub(a, b))
    y = Poly._raw(F, [F.mul(F.neg(b), hinv), hinv])
    out = Poly._raw(F, [])
    for c in reversed(g.coeffs):
        out = out * y + Poly._raw(F, [c])
    return out


@dataclass(frozen=True)
class EquivReport:
    side_a: bool
    side_b: bool
    systems_checked: int
    polya_but_singular: tuple | None
    singular_polya_mismatch: tuple | None
    mds_witness: tuple | None
    derivative_kind: str

    @property
    def agree(self) -> bool:
        return self.side_a == self.side_b and self.singular_polya_mismatch is None

    def to_json(self) -> dict:
        def pair(w):
            return None if w is None else {"jset": list(w[0]), "kset": list(w[1])}

        return {
            "agree": self.agree, "side_a": self.side_a, "side_b": self.side_b,
            "systems_checked": self.systems_checked,
            "polya_but_singular": pair(self.polya_but_singular),
            "nonsingular_without_polya": pair(self.singular_polya_mismatch),
            "mds_witness": None if self.mds_witness is None else {"cols": list(self.mds_witness)},
            "derivative_kind": self.derivative_kind,
        }


def order_sets(max_size: int):
    """All ``(jset, kset)`` with ``1 <= p+q <= max_size`` and orders ``< p+q``."""
    for N in range(1, max_size + 1):
        for p in range(N + 1):
            for jset in combinations(range(N), p):
                for kset in combinations(range(N), N - p):
                    yield jset, kset


def polya_mds_equiv(a, b, n: int, field: Field = QQ, derivative_kind: str | None = None) -> EquivReport:
    """Side A: every Polya-valid two-node system with ``p+q <= n+1`` is uniquely solvable.
    Side B: the derivative matrix is the parity check of an MDS tree code.

    Systems failing Polya are singular over every field; a nonsingular one
    would be recorded as a mismatch.
    """
    if n > 6:
        raise TooLarge(f"n = {n} exceeds the enumeration scale (n <= 6)")
    kind = _kind(field, derivative_kind)
    _nodes(field, a, b)
    checked = 0
    polya_singular = None
    mismatch = None
    for jset, kset in order_sets(n + 1):
        checked += 1
        ok = is_uniquely_solvable(a, b, jset, kset, field, kind)
        polya = polya_condition(jset, kset)
        if polya and not ok and polya_singular is None:
            polya_singular = (jset, kset)
        if ok and not polya and mismatch is None:
            mismatch = (jset, kset)
    verdict = is_mds(derivative_pcheck(a, b, n, field, kind))
    return EquivReport(polya_singular is None, verdict.holds, checked, polya_singular, mismatch,
                       verdict.witness, kind)
