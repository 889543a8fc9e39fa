"""Exact integer polynomials, rational functions and integer matrices.

Polynomials are stored lowest degree first.  The zero polynomial has an empty
coefficient tuple and degree ``-inf`` so that ``deg(a*b) == deg(a) + deg(b)``
holds without special cases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

NEG_INF = -math.inf


class DimensionError(ValueError):
    pass


class ContractError(ValueError):
    pass


class DivisibilityError(ArithmeticError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Immutable univariate polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"integer coefficient expected, got {x!r}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPolynomial:
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        """Monic polynomial prod(x - r)."""
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: IntPolynomial) -> IntPolynomial:
        acc = IntPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> IntPolynomial:
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> IntPolynomial:
        return cls(int(c) for c in data["coeffs"])


X = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))


def _rational_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division over the rationals; coefficient lists lowest first."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quo = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quo[k] = c
        if c:
            for i, bc in enumerate(b):
                rem[k + i] -= c * bc
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def poly_divmod_q(a: IntPolynomial, b: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    return _rational_divmod(a.coeffs, b.coeffs)


def poly_exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Return a/b, raising DivisibilityError unless the quotient is exact and integral."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quo, rem = _rational_divmod(a.coeffs, b.coeffs)
    if rem:
        raise DivisibilityError(f"{b} does not divide {a}")
    if any(c.denominator != 1 for c in quo):
        raise DivisibilityError(f"quotient {a} / {b} is not integral")
    return IntPolynomial(int(c) for c in quo)


def _pseudo_rem(a: tuple, b: tuple) -> tuple:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[x], primitive with positive leading coefficient
    times the gcd of the contents."""
    if a.is_zero():
        return b.primitive_part() * (1 if b.is_zero() else abs(b.content()))
    if b.is_zero():
        return a.primitive_part() * abs(a.content())
    cont = math.gcd(a.content(), b.content())
    u, v = a.primitive_part(), b.primitive_part()
    if u.degree < v.degree:
        u, v = v, u
    while not v.is_zero():
        r = IntPolynomial(_pseudo_rem(u.coeffs, v.coeffs))
        u, v = v, r.primitive_part()
    return u.primitive_part() * cont


class RationalFunction:
    """Quotient of integer polynomials in canonical reduced form.

    The fraction is reduced over Q[x]; numerator and denominator are integral with
    jointly trivial content, and the denominator has positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPolynomial | int, den: IntPolynomial | int = 1):
        if isinstance(num, int):
            num = IntPolynomial.constant(num)
        if isinstance(den, int):
            den = IntPolynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = IntPolynomial(), ONE
        else:
            g = poly_gcd(num, den).primitive_part()
            if g.degree > 0:
                # g is primitive, so Gauss's lemma keeps both quotients integral
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
            c = math.gcd(num.content(), den.content())
            if den.leading < 0:
                c = -c
            num = IntPolynomial(x // c for x in num.coeffs)
            den = IntPolynomial(x // c for x in den.coeffs)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def pretty(self, var: str = "S") -> str:
        if self.den == ONE:
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"

    def __eq__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return rf_eq(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other):
        return rf_mul(self, _as_rf(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_div(self, _as_rf(other))

    def __rtruediv__(self, other):
        return rf_div(_as_rf(other), self)

    def __add__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        if self.num.is_zero():
            raise ZeroDivisionError("zero to a negative power")
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> RationalFunction:
        return cls(IntPolynomial.from_json(data["num"]), IntPolynomial.from_json(data["den"]))


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return RationalFunction(a.num * b.num, a.den * b.den)


def rf_div(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if b.num.is_zero():
        raise ZeroDivisionError("division by the zero rational function")
    return RationalFunction(a.num * b.den, a.den * b.num)


def rf_eq(a: RationalFunction, b: RationalFunction) -> bool:
    return a.num * b.den == b.num * a.den


class IntMatrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        e = tuple(entries)
        if len(e) != rows * cols:
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(e)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", e)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionError("ragged rows")
        return cls(r, c, (int(x) for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, col)) for col in cols)
        return IntMatrix(self.rows, other.cols, out)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_sums(self) -> list[int]:
        return [sum(self.row(i)) for i in range(self.rows)]

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))


def _berkowitz(a: Sequence[Sequence]) -> list:
    """Division-free characteristic polynomial, coefficients highest degree first."""
    n = len(a)
    if n == 0:
        return [1]
    vect = [1, -a[0][0]]
    for r in range(1, n):
        col = [a[i][r] for i in range(r)]
        row = a[r][:r]
        t = [1, -a[r][r]]
        v = col
        for _ in range(r):
            t.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                s += t[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def charpoly(m: IntMatrix | Sequence[Sequence[int]]) -> IntPolynomial:
    """det(x*I - m), computed exactly without division."""
    rows = m.tolist() if isinstance(m, IntMatrix) else [list(r) for r in m]
    if any(len(r) != len(rows) for r in rows):
        raise DimensionError("charpoly needs a square matrix")
    return IntPolynomial(reversed(_berkowitz(rows)))


def charpoly_rational(rows: Sequence[Sequence[Fraction]]) -> IntPolynomial:
    """Characteristic polynomial of a rational matrix whose charpoly is integral.

    The matrix is scaled by the lcm ``D`` of its denominators; coefficient ``k`` of
    charpoly(D*A) carries a factor ``D**(n-k)`` which is divided back out.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("charpoly needs a square matrix")
    d = 1
    for r in rows:
        for x in r:
            d = math.lcm(d, Fraction(x).denominator)
    scaled = [[int(Fraction(x) * d) for x in r] for r in rows]
    c = list(reversed(_berkowitz(scaled)))
    out = []
    for k, ck in enumerate(c):
        q, rem = divmod(ck, d ** (n - k))
        if rem:
            raise DivisibilityError("characteristic polynomial is not integral")
        out.append(q)
    return IntPolynomial(out)


def bass_determinant(chi: IntPolynomial, p: int) -> IntPolynomial:
    """det(I - A*S + p*S^2*I) for any square A with characteristic polynomial chi.

    Uses det(I - A S + p S^2) = S^n chi((1 + p S^2)/S) = sum_k c_k (1 + p S^2)^k S^(n-k).
    """
    if chi.is_zero() or not chi.is_monic():
        raise ContractError(f"monic characteristic polynomial expected, got {chi}")
    n = chi.degree
    base = IntPolynomial((1, 0, p))
    out = IntPolynomial()
    power = ONE
    for k, c in enumerate(chi.coeffs):
        if c:
            out = out + power * IntPolynomial.monomial(n - k, c)
        power = power * base
    return out


def polynomial_matrix_det(m: Sequence[Sequence[IntPolynomial]]) -> IntPolynomial:
    """Determinant of a square matrix over Z[x] by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return ONE
    a = [list(r) for r in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return IntPolynomial()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = poly_exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sturm_count(f: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of f in the half-open interval (lo, hi]."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    seq = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative().coeffs]]
    while seq[-1]:
        _, r = _rational_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x):
        vals = []
        for p in seq:
            v = Fraction(0)
            for c in reversed(p):
                v = v * x + c
            if v:
                vals.append(v)
        return sum(1 for u, w in zip(vals, vals[1:]) if (u < 0) != (w < 0))

    return changes(Fraction(lo)) - changes(Fraction(hi))


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f.primitive_part()
    return poly_exact_div(f.primitive_part(), g.primitive_part()).primitive_part()


def roots_within(f: IntPolynomial, bound_sq: int) -> bool:
    """True iff every complex root of f is real with square at most ``bound_sq``.

    Works on F(t) = prod (t - r_i^2), read off from f(x) f(-x) = (-1)^n F(x^2),
    and counts the distinct roots of F inside [0, bound_sq] with Sturm sequences.
    """
    if f.degree <= 0:
        return True
    fneg = IntPolynomial(c if k % 2 == 0 else -c for k, c in enumerate(f.coeffs))
    prod = f * fneg
    big_f = IntPolynomial(prod.coeffs[0::2])
    sq = squarefree_part(big_f)
    inside = sturm_count(sq, Fraction(0), Fraction(bound_sq))
    if sq(0) == 0:
        inside += 1
    return inside == sq.degree
