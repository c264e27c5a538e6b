"""Bare polynomial arithmetic over F_p on int lists (lowest degree first).

These helpers back the extension-field arithmetic and the irreducibility
test; they avoid the object overhead of :class:`treecodes.poly.Poly`.
All results are trimmed (no trailing zeros); the zero polynomial is ``[]``.
"""

from __future__ import annotations


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], p - 2, p)
    if len(a) <= db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * lead_inv % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim([c % p for c in a[:db]])


def mod(a, f, p):
    return divmod_(a, f, p)[1]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def mulmod(a, b, f, p):
    return mod(mul(a, b, p), f, p)


def powmod(a, e, f, p):
    result = [1]
    base = mod(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return mod(result, f, p)


def inv_mod(a, f, p):
    """Inverse of ``a`` modulo ``f`` via the extended Euclidean algorithm."""
    r0, r1 = list(f), mod(a, f, p)
    s0, s1 = [], [1]
    if not r1:
        raise ZeroDivisionError("inverse of zero")
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo f")
    c = pow(r0[0], p - 2, p)
    return trim([x * c % p for x in s0])


def is_irreducible(f, p) -> bool:
    """Ben-Or test: ``gcd(f, x^(p^i) - x) = 1`` for ``i <= deg f / 2``.

    ``f`` must be monic. A factor of degree ``e <= deg f / 2`` would divide
    ``x^(p^e) - x``, so passing every round rules out all such factors.
    """
    f = trim(list(f))
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = powmod(h, p, f, p)
        if len(gcd(f, sub(h, x, p), p)) > 1:
            return False
    return True
