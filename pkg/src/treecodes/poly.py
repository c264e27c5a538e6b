"""Univariate polynomials over a :class:`~treecodes.scalar.Field`."""

from __future__ import annotations

import random
from math import comb

from . import _gfpoly
from .scalar import Field, PrimeField, QQ


class Poly:
    """Immutable polynomial; ``coeffs`` are raw field values, lowest degree first, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field.convert(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, field, cs):
        cs = list(cs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, field, degree, coeff=1):
        return cls._raw(field, [field.zero] * degree + [field.convert(coeff)])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @property
    def degree(self) -> float | int:
        """Index of the leading coefficient; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def coeffs_int(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly._raw(self.field, [self.field.convert(other)])
        if other.field != self.field:
            from .errors import FieldMismatch

            raise FieldMismatch("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly._raw(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly._raw(F, [])
        if isinstance(F, PrimeField):
            return Poly._raw(F, _gfpoly.mul(list(self.coeffs), list(other.coeffs), F.p))
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly._raw(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        F = self.field
        if other.is_zero():
            from .errors import DivisionByZero

            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead_inv = F.inv(other.coeffs[-1])
        if len(rem) <= db:
            return Poly._raw(F, []), self
        quot = [F.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            c = F.mul(c, lead_inv)
            quot[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, other.coeffs[j]))
        return Poly._raw(F, quot), Poly._raw(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        """Horner evaluation at a raw field value (or anything the field converts)."""
        F = self.field
        x = F.convert(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def hasse_derivative(self, j: int, standard: bool = False) -> "Poly":
        """``H^j``; with ``standard=True`` the ordinary j-th derivative instead."""
        return hasse_derivative(self, j, standard=standard)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.field!r}, [{', '.join(self.field.format(c) for c in self.coeffs)}])"

    def __str__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = F.format(c)
            if mono and c == F.one:
                terms.append(mono)
            elif mono:
                terms.append(f"({cs}){mono}" if "," in cs or "/" in cs or cs.startswith("-") else f"{cs}{mono}")
            else:
                terms.append(cs)
        return " + ".join(terms)


def falling_factorial(i: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= i - t
    return out


def hasse_derivative(g: Poly, j: int, standard: bool = False) -> Poly:
    """Hasse derivative ``H^j(x^i) = C(i, j) x^(i-j)``, extended linearly.

    ``standard=True`` gives ``(x^i)^(j) = i(i-1)...(i-j+1) x^(i-j)`` instead;
    over F_p the two differ once ``j >= p`` (``j!`` vanishes).
    """
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    F = g.field
    scale = falling_factorial if standard else comb
    out = []
    for i in range(j, len(g.coeffs)):
        out.append(F.mul(F.from_int(scale(i, j)), g.coeffs[i]))
    return Poly._raw(F, out)


def monomial_derivative_at(field: Field, i: int, j: int, point, standard: bool = False):
    """Value of the j-th (Hasse or standard) derivative of ``x^i`` at ``point``."""
    if j > i:
        return field.zero
    c = falling_factorial(i, j) if standard else comb(i, j)
    return field.mul(field.from_int(c), field.pow(point, i - j))


def is_irreducible(f: Poly) -> bool:
    """Irreducibility of a monic polynomial over a prime field."""
    if not isinstance(f.field, PrimeField):
        raise TypeError("irreducibility test needs a prime field")
    return _gfpoly.is_irreducible(f.coeffs_int(), f.field.p)


def find_irreducible(p: int, d: int, seed=0) -> Poly:
    """A monic irreducible polynomial of degree ``d`` over F_p, deterministic per ``seed``.

    Candidates are drawn uniformly from the monic polynomials of degree ``d``
    (about one in ``d`` is irreducible) and tested with Ben-Or's algorithm.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    F = PrimeField(p)
    rng = random.Random(f"irreducible:{p}:{d}:{seed}")
    while True:
        cs = [rng.randrange(p) for _ in range(d)] + [1]
        if _gfpoly.is_irreducible(cs, p):
            return Poly._raw(F, cs)


def rational_poly(coeffs) -> Poly:
    return Poly(QQ, coeffs)
