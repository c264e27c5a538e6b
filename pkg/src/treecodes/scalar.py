"""Exact fields: F_p, F_p[x]/(f) and the rationals.

A field object owns the arithmetic; elements are stored raw so that matrix
kernels can run without per-entry wrapper objects:

* prime field      -- ``int`` in ``[0, p)``
* extension field  -- ``tuple`` of ``k`` ints, polynomial basis coefficients
* rationals        -- :class:`fractions.Fraction`

:class:`Scalar` wraps a raw value together with its field for user-facing
arithmetic with operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from . import _gfpoly
from .errors import CompositeModulus, DivisionByZero, FieldMismatch, ReduciblePolynomial

# Deterministic Miller-Rabin: these bases are a proven witness set for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MAX_PRIME = 2**61


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes ``p`` with ``lo <= p <= hi``."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


class Field:
    """Common interface; concrete fields override the arithmetic."""

    kind: str
    zero: Any
    one: Any

    # arithmetic on raw values
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def inv(self, a): raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        raise NotImplementedError

    def convert(self, x):
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    @property
    def order(self) -> int | None:
        return None

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> Iterator:
        raise TypeError(f"cannot enumerate the infinite field {self}")

    def nonzero_elements(self) -> list:
        return [a for a in self.elements() if not self.is_zero(a)]

    def random_element(self, rng, nonzero: bool = False):
        raise NotImplementedError

    def header(self) -> str:
        """Field header line of the matrix text format."""
        raise NotImplementedError

    def __call__(self, x) -> "Scalar":
        return Scalar(self, self.convert(x))


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not (isinstance(p, int) and is_prime(p)):
            raise CompositeModulus(p)
        if p >= MAX_PRIME:
            raise CompositeModulus(p)
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n):
        return n % self.p

    def convert(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} to F_{self.p}")

    def parse(self, s):
        s = s.strip()
        if "/" in s:
            return self.convert(Fraction(s))
        return int(s) % self.p

    def format(self, a):
        return str(a)

    @property
    def order(self):
        return self.p

    @property
    def characteristic(self):
        return self.p

    def elements(self):
        return iter(range(self.p))

    def random_element(self, rng, nonzero=False):
        return rng.randrange(1, self.p) if nonzero else rng.randrange(self.p)

    def header(self):
        return f"field {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class ExtensionField(Field):
    """F_p[x]/(f) with elements in the polynomial basis ``1, x, ..., x^(k-1)``."""

    kind = "extension"

    def __init__(self, p: int, modulus):
        if not (isinstance(p, int) and is_prime(p)) or p >= MAX_PRIME:
            raise CompositeModulus(p)
        f = [int(c) % p for c in modulus]
        _gfpoly.trim(f)
        if not _gfpoly.is_irreducible(f, p):
            raise ReduciblePolynomial(modulus, p)
        self.p = p
        self.modulus = tuple(f)
        self.k = len(f) - 1
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def _pack(self, c):
        return tuple(c) + (0,) * (self.k - len(c))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p = self.p
        return self._pack(_gfpoly.mulmod(_gfpoly.trim(list(a)), _gfpoly.trim(list(b)), list(self.modulus), p))

    def inv(self, a):
        if not any(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        return self._pack(_gfpoly.inv_mod(_gfpoly.trim(list(a)), list(self.modulus), self.p))

    def is_zero(self, a):
        return not any(a)

    def from_int(self, n):
        return self._pack([n % self.p])

    @property
    def generator(self):
        """The class of ``x`` (for k = 1 this is ``x mod f``, a constant)."""
        return self._pack(_gfpoly.mod([0, 1], list(self.modulus), self.p))

    def from_coeffs(self, coeffs):
        return self._pack(_gfpoly.mod([int(c) % self.p for c in coeffs], list(self.modulus), self.p))

    def convert(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, bool):
            return self.from_int(int(x))
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in {self}")
            return self.from_int(x.numerator * pow(x.denominator, self.p - 2, self.p))
        if isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} to {self}")

    def parse(self, s):
        parts = [t for t in s.strip().split(",") if t != ""]
        return self.from_coeffs([int(t) for t in parts])

    def format(self, a):
        return ",".join(str(c) for c in a)

    @property
    def order(self):
        return self.p**self.k

    @property
    def characteristic(self):
        return self.p

    def elements(self):
        return iter(itertools.product(range(self.p), repeat=self.k))

    def random_element(self, rng, nonzero=False):
        while True:
            a = tuple(rng.randrange(self.p) for _ in range(self.k))
            if not nonzero or any(a):
                return a

    def header(self):
        return f"field {self.p} {self.k} " + " ".join(str(c) for c in self.modulus)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("extension", self.p, self.modulus))

    def __repr__(self):
        return f"F_{self.p}[x]/({_poly_str(self.modulus)})"


class RationalField(Field):
    kind = "rationals"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in Q")
        return a / b

    def pow(self, a, e):
        if e < 0 and a == 0:
            raise DivisionByZero("negative power of 0")
        return Fraction(a) ** e

    def from_int(self, n):
        return Fraction(n)

    def convert(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in Q")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot convert {x!r} to Q")

    def parse(self, s):
        return Fraction(s.strip())

    def format(self, a):
        return str(a)

    @property
    def characteristic(self):
        return 0

    def random_element(self, rng, nonzero=False):
        while True:
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if not nonzero or a:
                return a

    def header(self):
        return "field Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Q"


QQ = RationalField()


def field_make(kind: str, p: int | None = None, f=None) -> Field:
    """Validated field constructor.

    ``kind`` is ``"prime"``, ``"extension"`` or ``"rationals"`` (``"Q"`` also
    accepted). Raises :class:`CompositeModulus` / :class:`ReduciblePolynomial`.
    """
    if kind in ("rationals", "Q", "q"):
        return QQ
    if kind == "prime":
        return PrimeField(p)
    if kind == "extension":
        if f is None:
            raise ValueError("extension field needs a modulus polynomial")
        return ExtensionField(p, f)
    raise ValueError(f"unknown field kind {kind!r}")


def field_of_order(q: int, seed: int = 0) -> Field:
    """F_q for a prime power ``q``; extension moduli come from :func:`poly.find_irreducible`."""
    if is_prime(q):
        return PrimeField(q)
    for p in primes_between(2, int(q**0.5) + 1):
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if k:
            if r != 1:
                break
            from .poly import find_irreducible

            return ExtensionField(p, find_irreducible(p, k, seed).coeffs_int())
    raise CompositeModulus(q)


def parse_field(spec: str) -> Field:
    """Parse a compact field spec: ``Q``, ``7`` or ``2:1,1,0,1`` (modulus coefficients, low first)."""
    spec = spec.strip()
    if spec in ("Q", "q", "QQ"):
        return QQ
    if ":" in spec:
        p, coeffs = spec.split(":", 1)
        return ExtensionField(int(p), [int(c) for c in coeffs.split(",")])
    return PrimeField(int(spec))


def _poly_str(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}{mono}"))
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Scalar:
    """A field element bundled with its field."""

    field: Field
    value: Any

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field} elements")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inv(self):
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.field.format(self.value)})"


def scalar_arith(a: Scalar, b: Scalar | None, op: str, e: int | None = None) -> Scalar:
    """Dispatch ``op`` in {add, sub, mul, div, inv, pow}; ``b`` is ignored for inv/pow."""
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** e
    if not isinstance(b, Scalar) or b.field != a.field:
        raise FieldMismatch("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
