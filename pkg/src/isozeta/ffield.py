"""Finite fields F_{q^k} and a compatible tower of extensions over F_q.

Elements of ``GF(q, modulus)`` are plain ints in ``range(q**k)``: the base-q
digits are the coordinates on the power basis 1, t, ..., t^(k-1), with
t a root of the defining polynomial.  Prime-field elements therefore have the
same encoding at every level of a tower.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Sequence

from . import fpoly

TABLE_LIMIT = 1 << 18


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class GF:
    """The field F_q[t]/(modulus) with elements encoded as ints."""

    def __init__(self, q: int, modulus: Sequence[int]):
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError("defining polynomial must be monic of positive degree")
        self.q = q
        self.modulus = modulus
        self.k = len(modulus) - 1
        self.order = q ** self.k
        k = self.k
        # coordinates of t^j mod modulus, for k <= j <= 2k-2
        self._wide = []
        cur = [(-c) % q for c in modulus[:k]]
        for _ in range(k - 1):
            self._wide.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % q for c, m in zip(cur, modulus[:k])]
        self._log = self._exp = None
        if k == 1:
            self.mul = self._mul_prime
            self.add = self._add_prime
            self.sub = self._sub_prime
        elif k == 2:
            self.add = self._add2
            self.sub = self._sub2
        if self.order <= TABLE_LIMIT:
            self._build_tables()
            if k > 1:
                self.mul = self._mul_table

    # -- representation -------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q}^{self.k})"

    def __reduce__(self):
        return (GF, (self.q, self.modulus))

    zero = 0
    one = 1

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple(self.coords_list(x))

    def coords_list(self, x: int) -> list[int]:
        q = self.q
        if self.k == 1:
            return [x]
        out = []
        for _ in range(self.k):
            x, r = divmod(x, q)
            out.append(r)
        return out

    def from_coords(self, c: Sequence[int]) -> int:
        if len(c) > self.k:
            raise FieldError("too many coordinates")
        x = 0
        for d in reversed(c):
            x = x * self.q + (d % self.q)
        return x

    def from_int(self, n: int) -> int:
        return n % self.q

    @property
    def gen(self) -> int:
        """The class of t (for k == 1 this is the root of the linear modulus)."""
        return self.q if self.k > 1 else (-self.modulus[0]) % self.q

    def reduce_wide(self, c: Sequence[int]) -> int:
        """Pack a coordinate vector of length <= 2k-1 after reducing mod the modulus."""
        k, q = self.k, self.q
        out = list(c[:k]) + [0] * (k - len(c[:k]))
        for j in range(k, len(c)):
            cj = c[j] % q
            if cj:
                row = self._wide[j - k]
                for i in range(k):
                    out[i] += cj * row[i]
        x = 0
        for d in reversed(out):
            x = x * q + d % q
        return x

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def elements(self):
        return range(self.order)

    # -- arithmetic -----------------------------------------------------
    def _add_prime(self, a, b):
        s = a + b
        return s - self.q if s >= self.q else s

    def _sub_prime(self, a, b):
        s = a - b
        return s + self.q if s < 0 else s

    def _mul_prime(self, a, b):
        return a * b % self.q

    def _add2(self, a, b):
        q = self.q
        a1, a0 = divmod(a, q)
        b1, b0 = divmod(b, q)
        s0 = a0 + b0
        if s0 >= q:
            s0 -= q
        s1 = a1 + b1
        if s1 >= q:
            s1 -= q
        return s0 + s1 * q

    def _sub2(self, a, b):
        q = self.q
        a1, a0 = divmod(a, q)
        b1, b0 = divmod(b, q)
        s0 = a0 - b0
        if s0 < 0:
            s0 += q
        s1 = a1 - b1
        if s1 < 0:
            s1 += q
        return s0 + s1 * q

    def add(self, a, b):
        q = self.q
        out = 0
        mult = 1
        for _ in range(self.k):
            a, x = divmod(a, q)
            b, y = divmod(b, q)
            out += ((x + y) % q) * mult
            mult *= q
        return out

    def sub(self, a, b):
        q = self.q
        out = 0
        mult = 1
        for _ in range(self.k):
            a, x = divmod(a, q)
            b, y = divmod(b, q)
            out += ((x - y) % q) * mult
            mult *= q
        return out

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        x, y = self.coords_list(a), self.coords_list(b)
        prod = [0] * (2 * self.k - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] += u * v
        return self.reduce_wide(prod)

    def _mul_table(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def square(self, a):
        return self.mul(a, a)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._log is not None:
            return self._exp[self.order - 1 - self._log[a]]
        if self.k == 1:
            return pow(a, -1, self.q)
        return self._inv_euclid(a)

    def _inv_euclid(self, a):
        Fp = prime_field(self.q)
        g, s, _ = fpoly.xgcd(Fp, self.coords_list(a), list(self.modulus))
        if g != [1]:
            raise FieldError("defining polynomial is not irreducible")
        return self.from_coords(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        e %= self.order - 1
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius(self, a, power: int = 1):
        """a^(q^power)."""
        power %= self.k
        return self.pow(a, self.q ** power) if power else a

    def is_square(self, a) -> bool:
        if a == 0:
            return True
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.order - 1) // 2) == 1

    def sqrt(self, a):
        """A square root of a, or None if a is not a square."""
        if a == 0:
            return 0
        if self._log is not None:
            la = self._log[a]
            return None if la % 2 else self._exp[la // 2]
        if not self.is_square(a):
            return None
        return self._tonelli(a)

    def _tonelli(self, a):
        Q = self.order
        s, t = 0, Q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = 2
        while self.is_square(z):
            z += 1
        c = self.pow(z, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = s
        while b != 1:
            i, b2 = 0, b
            while b2 != 1:
                b2 = self.mul(b2, b2)
                i += 1
            g = c
            for _ in range(m - i - 1):
                g = self.mul(g, g)
            x = self.mul(x, g)
            c = self.mul(g, g)
            b = self.mul(b, c)
            m = i
        return x

    def _build_tables(self):
        n = self.order - 1
        primes = list(factorize(n)) if n > 1 else []
        mul = GF.mul.__get__(self) if self.k > 1 else self._mul_prime
        for g in range(2 if self.k == 1 else self.q, self.order):
            if all(self._pow_plain(g, n // r, mul) != 1 for r in primes):
                break
        else:
            g = 1
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = mul(x, g)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log
        self.primitive = g

    @staticmethod
    def _pow_plain(a, e, mul):
        result = 1
        while e:
            if e & 1:
                result = mul(result, a)
            e >>= 1
            if e:
                a = mul(a, a)
        return result

    def log_table(self):
        """Discrete logs w.r.t. the table's primitive element (tabled fields only)."""
        return self._log


@lru_cache(maxsize=None)
def prime_field(q: int) -> GF:
    return GF(q, (0, 1))


def lex_smallest_irreducible(q: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_q.

    Candidates are compared on (c_0, c_1, ..., c_{k-1}) from the constant term up.
    """
    if k == 1:
        return (0, 1)
    Fp = prime_field(q)
    # a zero constant term means divisibility by x
    for c0 in range(1, q):
        for rest in itertools.product(range(q), repeat=k - 1):
            f = [c0, *rest, 1]
            if fpoly.is_irreducible(Fp, f):
                return tuple(f)
    raise FieldError("no irreducible polynomial found")  # unreachable


class Embedding:
    """Ring embedding F_{q^a} -> F_{q^b} given by the image of the generator."""

    def __init__(self, src: GF, dst: GF, gen_image: int):
        self.src, self.dst, self.gen_image = src, dst, gen_image
        powers = [1]
        for _ in range(src.k - 1):
            powers.append(dst.mul(powers[-1], gen_image))
        self._basis = [dst.coords_list(p) for p in powers]
        self._solver = None

    def __call__(self, x: int) -> int:
        if self.src.k == 1 or x < self.src.q:
            return x
        dst = self.dst
        acc = [0] * dst.k
        for c, col in zip(self.src.coords_list(x), self._basis):
            if c:
                for i, v in enumerate(col):
                    acc[i] += c * v
        return dst.from_coords(acc)

    def preimage(self, y: int) -> int:
        """Inverse on the image; raises FieldError for elements outside it."""
        if self.src.k == 1:
            if y < self.dst.q:
                return y
            raise FieldError("element is not in the prime field")
        if self._solver is None:
            self._solver = _left_inverse(self._basis, self.dst.q)
        pivots, inv = self._solver
        q = self.dst.q
        yc = self.dst.coords_list(y)
        rhs = [yc[p] for p in pivots]
        x = [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) % q for i in range(len(inv))]
        x_elem = self.src.from_coords(x)
        if self(x_elem) != y:
            raise FieldError("element is not in the subfield")
        return x_elem


def _left_inverse(cols: list[list[int]], q: int):
    """Pick rows making the column matrix invertible; return (rows, inverse)."""
    a = len(cols)
    n = len(cols[0])
    mat = [[cols[j][i] for j in range(a)] for i in range(n)]
    pivots = []
    chosen: list[list[int]] = []
    for i in range(n):
        trial = chosen + [mat[i]]
        if _rank(trial, q) == len(trial):
            chosen = trial
            pivots.append(i)
            if len(chosen) == a:
                break
    square = [row[:] for row in chosen]
    inv = [[int(i == j) for j in range(a)] for i in range(a)]
    for c in range(a):
        r = next(r for r in range(c, a) if square[r][c] % q)
        square[c], square[r] = square[r], square[c]
        inv[c], inv[r] = inv[r], inv[c]
        s = pow(square[c][c], -1, q)
        square[c] = [v * s % q for v in square[c]]
        inv[c] = [v * s % q for v in inv[c]]
        for r2 in range(a):
            if r2 != c and square[r2][c]:
                f = square[r2][c]
                square[r2] = [(u - f * v) % q for u, v in zip(square[r2], square[c])]
                inv[r2] = [(u - f * v) % q for u, v in zip(inv[r2], inv[c])]
    return pivots, inv


def _rank(rows: list[list[int]], q: int) -> int:
    m = [r[:] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] % q), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        s = pow(m[rank][c], -1, q)
        m[rank] = [v * s % q for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] % q:
                f = m[r][c]
                m[r] = [(u - f * v) % q for u, v in zip(m[r], m[rank])]
        rank += 1
    return rank


class FieldTower:
    """Extensions F_{q^k} of a fixed prime field with compatible embeddings.

    Level k uses the lexicographically smallest monic irreducible of degree k.
    For each level b the generators of its maximal subfields are sent to roots
    chosen smallest-first subject to agreeing on pairwise intersections, and every
    other embedding is a composite through a maximal subfield, so embeddings
    commute along every chain a | b | c.
    """

    def __init__(self, q: int, seed: int = 0):
        if not is_prime(q):
            raise FieldError(f"q={q} is not prime")
        if q == 2:
            raise FieldError("characteristic 2 is not supported")
        self.q = q
        self.seed = seed
        self._levels: dict[int, GF] = {1: prime_field(q)}
        self._maximal: dict[int, dict[int, int]] = {}
        self._embeddings: dict[tuple[int, int], Embedding] = {}

    def __repr__(self):
        return f"FieldTower(q={self.q}, levels={sorted(self._levels)})"

    def rng(self, *salt) -> random.Random:
        return random.Random(repr((self.seed, self.q) + salt))

    def build_extension(self, k: int) -> FieldTower:
        self.level(k)
        return self

    def level(self, k: int) -> GF:
        if k < 1:
            raise FieldError("extension degree must be positive")
        F = self._levels.get(k)
        if F is None:
            F = GF(self.q, lex_smallest_irreducible(self.q, k))
            self._levels[k] = F
        return F

    def defining_polynomials(self) -> dict[int, tuple[int, ...]]:
        return {k: F.modulus for k, F in sorted(self._levels.items())}

    # -- embeddings -----------------------------------------------------
    def embedding(self, a: int, b: int) -> Embedding:
        if b % a:
            raise FieldError(f"level {a} does not divide level {b}")
        emb = self._embeddings.get((a, b))
        if emb is None:
            emb = Embedding(self.level(a), self.level(b), self._gen_image(a, b))
            self._embeddings[(a, b)] = emb
        return emb

    def embed(self, x: int, a: int, b: int) -> int:
        if a == b:
            return x
        return self.embedding(a, b)(x)

    def restrict(self, y: int, b: int, a: int) -> int:
        """Inverse of embed on its image; raises FieldError otherwise."""
        if a == b:
            return y
        return self.embedding(a, b).preimage(y)

    def _gen_image(self, a: int, b: int) -> int:
        Fb = self.level(b)
        if a == b:
            return Fb.gen
        if a == 1:
            return self.level(1).gen
        maximal = self._maximal_images(b)
        if a in maximal:
            return maximal[a]
        m = min(d for d in maximal if d % a == 0)
        inner = self._gen_image(a, m)
        return self._via(inner, m, b, maximal[m])

    def _via(self, x: int, m: int, b: int, root: int) -> int:
        Fm, Fb = self.level(m), self.level(b)
        acc, power = 0, 1
        for c in Fm.coords_list(x):
            if c:
                acc = Fb.add(acc, Fb.mul(c, power))
            power = Fb.mul(power, root)
        return acc

    def _maximal_images(self, b: int) -> dict[int, int]:
        if b in self._maximal:
            return self._maximal[b]
        chosen: dict[int, int] = {}
        Fb = self.level(b)
        for r in sorted(fpoly._prime_factors(b), reverse=True):
            m = b // r
            if m == 1:
                continue
            Fm = self.level(m)
            cands = sorted(self.roots(list(Fm.modulus), 1, b), key=Fb.coords)
            for cand in dict.fromkeys(cands):
                ok = True
                for m2, root2 in chosen.items():
                    g = _gcd(m, m2)
                    if g == 1:
                        continue
                    x_m = self._gen_image(g, m)
                    x_m2 = self._gen_image(g, m2)
                    if self._via(x_m, m, b, cand) != self._via(x_m2, m2, b, root2):
                        ok = False
                        break
                if ok:
                    chosen[m] = cand
                    break
            else:
                raise FieldError("no compatible embedding found")  # unreachable
        self._maximal[b] = chosen
        return chosen

    # -- polynomial roots -----------------------------------------------
    def roots(self, f: Sequence[int], f_level: int, level: int) -> list[int]:
        """Roots of f (coefficients at ``f_level``) in F_{q^level}, with multiplicity.

        f is made squarefree by splitting off gcd(f, x^Q - x) over its own
        field, factored there, and each irreducible factor is then split in the
        target field from a single root and its Frobenius conjugates.
        """
        Fa = self.level(f_level)
        if level % f_level:
            raise FieldError("target level must be a multiple of the coefficient level")
        f = fpoly.trim(f)
        if not f:
            raise FieldError("roots of the zero polynomial")
        Fb = self.level(level)
        rng = self.rng("roots", f_level, level, tuple(f))
        f = fpoly.monic(Fa, f)
        if len(f) == 1:
            return []
        rel = level // f_level
        pm = fpoly.PolyModulus(Fa, f)
        x = [0, 1]
        h = x
        for _ in range(rel):
            h = pm.pow(h, Fa.order)
        g = fpoly.gcd(Fa, fpoly.sub(Fa, h, x), f)
        distinct: list[int] = []
        for factor in fpoly.factor_squarefree(Fa, g, rng):
            distinct.extend(self._roots_of_irreducible(factor, f_level, level, rng))
        emb = self.embedding(f_level, level)
        fb = [emb(c) for c in f]
        out = []
        for r in distinct:
            cur = fb
            while True:
                quo, rem_ = fpoly.poly_divmod(Fb, cur, [Fb.neg(r), 1])
                if rem_:
                    break
                out.append(r)
                cur = quo
        return sorted(out, key=Fb.coords)

    def _roots_of_irreducible(self, g, a: int, b: int, rng) -> list[int]:
        Fa, Fb = self.level(a), self.level(b)
        e = len(g) - 1
        if e == 1:
            return [self.embed(Fa.neg(g[0]), a, b)]
        emb = self.embedding(a, b)
        gb = [emb(c) for c in g]
        r = fpoly.one_root(Fb, gb, rng)
        out = [r]
        for _ in range(e - 1):
            out.append(Fb.pow(out[-1], Fa.order))
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def get_tower(q: int, seed: int = 0) -> FieldTower:
    return FieldTower(q, seed)


def frobenius(F: GF, x: int, power: int) -> int:
    return F.frobenius(x, power)


def element_to_json(F: GF, x: int) -> dict:
    return {"level": F.k, "coords": [str(c) for c in F.coords(x)]}


def element_from_json(tower: FieldTower, data: dict) -> int:
    F = tower.level(int(data["level"]))
    return F.from_coords([int(c) for c in data["coords"]])
