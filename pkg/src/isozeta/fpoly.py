"""Univariate polynomials over a finite field ``GF``.

A polynomial is a list of packed field elements, lowest degree first, with no
trailing zeros (``[]`` is zero).  Products go through Kronecker substitution:
both operands are packed into one big integer, multiplied once, and unpacked.
"""

from __future__ import annotations

import random
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .ffield import GF

Poly = list

_SCHOOLBOOK_CUTOFF = 4


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence[int]) -> int:
    return len(a) - 1


def add(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        out[i] = fadd(out[i], c)
    return trim(out)


def sub(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    out = list(a) + [0] * (len(b) - len(a))
    fsub = F.sub
    for i, c in enumerate(b):
        out[i] = fsub(out[i], c)
    return trim(out)


def neg(F: GF, a: Sequence[int]) -> Poly:
    return [F.neg(c) for c in a]


def scale(F: GF, a: Sequence[int], c: int) -> Poly:
    if c == 0:
        return []
    fmul = F.mul
    return trim(fmul(x, c) for x in a)


def shift(a: Sequence[int], n: int) -> Poly:
    return [0] * n + list(a) if a else []


def _schoolbook(F: GF, a, b) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    fmul, fadd = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def mul(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF and F.k <= 2:
        return _schoolbook(F, a, b)
    k, q = F.k, F.q
    stride = 2 * k - 1
    bound = min(len(a), len(b)) * k * (q - 1) ** 2
    nb = bound.bit_length() // 8 + 1
    coords = F.coords_list
    pad = [0] * (stride - k)

    def pack(p):
        parts = []
        for c in p:
            for d in coords(c):
                parts.append(d.to_bytes(nb, "little"))
            for d in pad:
                parts.append(b"\x00" * nb)
        return int.from_bytes(b"".join(parts), "little")

    prod = pack(a) * pack(b)
    n_out = len(a) + len(b) - 1
    total = n_out * stride * nb
    data = prod.to_bytes(total, "little")
    slots = [int.from_bytes(data[i:i + nb], "little") for i in range(0, total, nb)]
    if k == 1:
        return trim(s % q for s in slots)
    reduce_coords = F.reduce_wide
    return trim(reduce_coords(slots[i * stride:(i + 1) * stride]) for i in range(n_out))


def sqr(F: GF, a: Sequence[int]) -> Poly:
    return mul(F, a, a)


def monic(F: GF, a: Sequence[int]) -> Poly:
    if not a:
        return []
    lead = a[-1]
    if lead == 1:
        return list(a)
    return scale(F, a, F.inv(lead))


def poly_divmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    rem = list(a)
    if len(rem) - 1 < db:
        return [], trim(rem)
    inv_lead = F.inv(b[-1])
    fmul, fsub = F.mul, F.sub
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        if c:
            c = fmul(c, inv_lead)
            quo[k] = c
            for i in range(db):
                bi = b[i]
                if bi:
                    rem[k + i] = fsub(rem[k + i], fmul(c, bi))
            rem[k + db] = 0
    return trim(quo), trim(rem[:db])


def rem(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_divmod(F, a, b)[1]


def exact_div(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    q, r = poly_divmod(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(F: GF, a: Sequence[int], b: Sequence[int]) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qt, r2 = poly_divmod(F, r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def inv_mod(F: GF, a: Sequence[int], m: Sequence[int]) -> Poly:
    g, s, _ = xgcd(F, a, m)
    if g != [1]:
        raise ZeroDivisionError("polynomial not invertible modulo m")
    return rem(F, s, m)


def evaluate(F: GF, a: Sequence[int], x: int) -> int:
    acc = 0
    fmul, fadd = F.mul, F.add
    for c in reversed(a):
        acc = fadd(fmul(acc, x), c)
    return acc


def derivative(F: GF, a: Sequence[int]) -> Poly:
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(a) if i)


def from_roots(F: GF, roots: Sequence[int]) -> Poly:
    out = [1]
    for r in roots:
        out = mul(F, out, [F.neg(r), 1])
    return out


def map_coeffs(a: Sequence[int], fn) -> Poly:
    return trim(fn(c) for c in a)


class PolyModulus:
    """Fixed monic modulus with Barrett-style reduction through fast products."""

    def __init__(self, F: GF, f: Sequence[int]):
        f = monic(F, f)
        if len(f) < 2:
            raise ValueError("modulus must have positive degree")
        self.F = F
        self.f = f
        self.m = len(f) - 1
        self._inv_rev = _series_inverse(F, f[::-1], max(self.m - 1, 1))

    def reduce(self, a: Sequence[int]) -> Poly:
        F, m = self.F, self.m
        a = trim(a)
        n = len(a) - 1
        if n < m:
            return a
        if n > 2 * m - 2:
            return rem(F, a, self.f)
        qlen = n - m + 1
        qrev = mul(F, a[::-1][:qlen], self._inv_rev[:qlen])[:qlen]
        qrev = qrev + [0] * (qlen - len(qrev))
        prod = mul(F, qrev[::-1], self.f)
        return sub(F, a[:m], prod[:m])

    def mul(self, a, b) -> Poly:
        return self.reduce(mul(self.F, a, b))

    def pow(self, a: Sequence[int], e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        result = [1]
        base = self.reduce(a)
        for bit in bin(e)[2:]:
            result = self.reduce(mul(self.F, result, result))
            if bit == "1":
                result = self.reduce(mul(self.F, result, base))
        return result


def _series_inverse(F: GF, h: Sequence[int], n: int) -> Poly:
    """First n coefficients of 1/h as a power series (h[0] != 0)."""
    h = list(h) + [0] * max(0, n - len(h))
    inv0 = F.inv(h[0])
    g = [inv0]
    fmul, fadd = F.mul, F.add
    for i in range(1, n):
        acc = 0
        for j in range(1, i + 1):
            if h[j]:
                acc = fadd(acc, fmul(h[j], g[i - j]))
        g.append(F.neg(fmul(acc, inv0)))
    return g


def powmod(F: GF, a: Sequence[int], e: int, f: Sequence[int]) -> Poly:
    return PolyModulus(F, f).pow(a, e)


def frobenius_x(F: GF, pm: PolyModulus) -> Poly:
    """x^|F| modulo the modulus."""
    return pm.pow([0, 1], F.order)


def is_irreducible(F: GF, f: Sequence[int]) -> bool:
    """Ben-Or's test: no factor of degree <= n/2 divides f."""
    f = monic(F, f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    pm = PolyModulus(F, f)
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = pm.pow(h, F.order)
        if gcd(F, sub(F, h, x), f) != [1]:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def distinct_degree(F: GF, f: Sequence[int], max_degree: int | None = None) -> list[tuple[int, Poly]]:
    """Distinct-degree factorization of a squarefree monic f.

    Returns (d, g_d) where g_d is the product of the irreducible factors of degree d.
    """
    f = monic(F, f)
    out = []
    x = [0, 1]
    h = x
    d = 0
    rest = f
    limit = max_degree if max_degree is not None else len(f) - 1
    while len(rest) - 1 >= 2 * (d + 1) and d < limit:
        d += 1
        pm = PolyModulus(F, rest)
        h = pm.pow(pm.reduce(h), F.order)
        g = gcd(F, sub(F, h, x), rest)
        if len(g) > 1:
            out.append((d, g))
            rest = exact_div(F, rest, g)
            h = rem(F, h, rest) if len(rest) > 1 else []
    if len(rest) > 1 and len(rest) - 1 <= limit:
        out.append((len(rest) - 1, rest))
    return out


def equal_degree(F: GF, f: Sequence[int], d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    f = monic(F, f)
    n = len(f) - 1
    if n == d:
        return [f]
    if n % d:
        raise ValueError("degree not a multiple of d")
    if F.q == 2:
        raise NotImplementedError("characteristic 2 is not supported")
    e = (F.order ** d - 1) // 2
    pm = PolyModulus(F, f)
    while True:
        a = trim(rng.randrange(F.order) for _ in range(n))
        if len(a) < 2:
            continue
        b = pm.pow(a, e)
        g = gcd(F, sub(F, b, [1]), f)
        if 1 < len(g) < len(f):
            return (equal_degree(F, g, d, rng)
                    + equal_degree(F, exact_div(F, f, g), d, rng))


def one_root(F: GF, f: Sequence[int], rng: random.Random) -> int:
    """One root of a monic f that splits into distinct linear factors over F."""
    f = monic(F, f)
    if F.q == 2:
        raise NotImplementedError("characteristic 2 is not supported")
    e = (F.order - 1) // 2
    while len(f) > 2:
        pm = PolyModulus(F, f)
        a = trim(rng.randrange(F.order) for _ in range(len(f) - 1))
        if len(a) < 2:
            continue
        g = gcd(F, sub(F, pm.pow(a, e), [1]), f)
        if 1 < len(g) < len(f):
            other = exact_div(F, f, g)
            f = g if len(g) <= len(other) else other
    return F.neg(f[0])


def factor_squarefree(F: GF, f: Sequence[int], rng: random.Random) -> list[Poly]:
    """Monic irreducible factors of a squarefree f, canonically sorted."""
    out = []
    for d, g in distinct_degree(F, f):
        out.extend(equal_degree(F, g, d, rng))
    return sorted(out, key=lambda p: poly_key(F, p))


def poly_key(F: GF, p: Sequence[int]) -> tuple:
    return (len(p),) + tuple(F.coords(c) for c in p)
