"""Weight-2 modular symbols for Gamma_0(M) through Manin symbols."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exact import IntPolynomial, charpoly_rational


class P1:
    """The projective line over Z/M with a full lookup table.

    Representatives are the lexicographically smallest pairs in each unit orbit.
    """

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("level must be positive")
        self.M = M
        units = [u for u in range(1, M + 1) if gcd(u, M) == 1] if M > 1 else [1]
        self.reps: list[tuple[int, int]] = []
        self.index: dict[tuple[int, int], int] = {}
        for c in range(M):
            for d in range(M):
                if gcd(gcd(c, d), M) != 1 or (c, d) in self.index:
                    continue
                i = len(self.reps)
                self.reps.append((c, d))
                for u in units:
                    self.index[(u * c % M, u * d % M)] = i

    def __len__(self):
        return len(self.reps)

    def lookup(self, c: int, d: int) -> int:
        return self.index[(c % self.M, d % self.M)]


@lru_cache(maxsize=None)
def p1(M: int) -> P1:
    return P1(M)


def p1_list(M: int) -> list[tuple[int, int]]:
    """Canonical representatives (c, d) of P^1(Z/M)."""
    return list(p1(M).reps)


# -- arithmetic of the level ---------------------------------------------------------

def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _kronecker_minus1(ell: int) -> int:
    if ell == 2:
        return 0
    return 1 if ell % 4 == 1 else -1


def _kronecker_minus3(ell: int) -> int:
    if ell == 3:
        return 0
    if ell == 2:
        return -1
    return 1 if ell % 3 == 1 else -1


def _phi(n: int) -> int:
    out = n
    for ell in _prime_divisors(n):
        out = out // ell * (ell - 1)
    return out


def psi_index(M: int) -> int:
    out = M
    for ell in _prime_divisors(M):
        out = out // ell * (ell + 1)
    return out


def cusp_count(M: int) -> int:
    return sum(_phi(gcd(d, M // d)) for d in range(1, M + 1) if M % d == 0)


def genus(M: int) -> int:
    """Genus of X_0(M) from the index, elliptic points and cusps."""
    primes = _prime_divisors(M)
    nu2 = 0
    if M % 4:
        nu2 = 1
        for ell in primes:
            nu2 *= 1 + _kronecker_minus1(ell)
    nu3 = 0
    if M % 9:
        nu3 = 1
        for ell in primes:
            nu3 *= 1 + _kronecker_minus3(ell)
    twelve_g = 12 + psi_index(M) - 3 * nu2 - 4 * nu3 - 6 * cusp_count(M)
    if twelve_g % 12:
        raise ArithmeticError("genus formula produced a non-integer")
    return twelve_g // 12


# -- exact linear algebra over Q -----------------------------------------------------

def _rref(rows: list[dict], ncols: int | None = None) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows {col: Fraction}; returns (rows, pivots)."""
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for c in sorted(set(row) & set(pivot_rows)):
            v = row.get(c)
            if v:
                for cc, vv in pivot_rows[c].items():
                    nv = row.get(cc, 0) - v * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for other in pivot_rows.values():
            v = other.get(p)
            if v:
                for cc, vv in row.items():
                    nv = other.get(cc, 0) - v * vv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        pivot_rows[p] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def _kernel(rows: list[dict], ncols: int) -> list[dict]:
    """Basis of {v : row . v = 0 for every row}, in reduced echelon form."""
    reduced, pivots = _rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for p, row in zip(pivots, reduced):
            v = row.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    reduced, _ = _rref(basis, ncols)
    return reduced


# -- Manin symbols -------------------------------------------------------------------

def _lift_to_sl2(c: int, d: int, M: int) -> tuple[int, int, int, int]:
    """(a, b, c', d') in SL_2(Z) with (c', d') congruent to (c, d) mod M."""
    if M == 1:
        return (1, 0, 0, 1)
    c, d = c % M, d % M
    if c == 0:
        c = M
    # move d within its class mod M until gcd(c, d) = 1
    while gcd(c, d) != 1:
        d += M
    _, s, t = _xgcd(d, c)
    # s d + t c = 1, so [[s, -t], [c, d]] has determinant 1
    return (s, -t, c, d)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


class _CuspClasses:
    """Gamma_0(M)-equivalence classes of cusps a/c."""

    def __init__(self, M: int):
        self.M = M
        self.reps: list[tuple[int, int]] = []
        self.index(1, 0)

    @staticmethod
    def _normalize(a: int, c: int) -> tuple[int, int, int]:
        g = gcd(a, c)
        a, c = a // g, c // g
        if c == 0:
            s = a
        elif abs(c) == 1:
            s = 0
        else:
            s = pow(a, -1, abs(c))
        return a, c, s

    def index(self, a: int, c: int) -> int:
        a, c, s = self._normalize(a, c)
        for i, (a2, c2) in enumerate(self.reps):
            _, _, s2 = self._normalize(a2, c2)
            m = gcd(c * c2, self.M)
            if (s * c2 - s2 * c) % m == 0:
                return i
        self.reps.append((a, c))
        return len(self.reps) - 1


def heilbronn_merel(ell: int) -> list[tuple[int, int, int, int]]:
    """Matrices (a, b, c, d) with a > b >= 0, d > c >= 0 and ad - bc = ell."""
    out = []
    for a in range(1, ell + 1):
        for d in range(1, ell + 2 - a):
            rest = a * d - ell
            if rest < 0:
                continue
            if rest == 0:
                out.extend((a, b, 0, d) for b in range(a))
                out.extend((a, 0, c, d) for c in range(1, d))
                continue
            for b in range(1, a):
                if rest % b == 0 and rest // b < d:
                    out.append((a, b, rest // b, d))
    return out


@dataclass
class ManinSpace:
    """Weight-2 modular symbols for Gamma_0(M) presented by Manin symbols.

    ``coords[i]`` writes Manin symbol i of P^1(Z/M) in the basis of free symbols
    ``free`` (sparse dict). ``cuspidal`` and ``plus`` are reduced-echelon bases of
    the cuspidal subspace and of its star-fixed part, in the same coordinates.
    """

    M: int
    free: list[int]
    coords: list[dict]
    cuspidal: list[dict] = field(default_factory=list)
    plus: list[dict] = field(default_factory=list)
    cusps: _CuspClasses = None

    def __post_init__(self):
        if self.cusps is None:
            self.cusps = _CuspClasses(self.M)

    @property
    def dimension(self) -> int:
        return len(self.free)

    def symbol_vector(self, c: int, d: int) -> dict:
        P = p1(self.M)
        if gcd(gcd(c, d), self.M) != 1:
            return {}
        return self.coords[P.lookup(c, d)]

    def star(self, vec: dict) -> dict:
        """The involution (c:d) -> -(-c:d), extended linearly."""
        reps = p1(self.M).reps
        out: dict[int, Fraction] = {}
        for k, v in vec.items():
            c, d = reps[self.free[k]]
            _accumulate(out, self.symbol_vector(-c, d), -v)
        return out

    def hecke(self, vec: dict, ell: int) -> dict:
        reps = p1(self.M).reps
        mats = heilbronn_merel(ell)
        out: dict[int, Fraction] = {}
        for k, v in vec.items():
            c, d = reps[self.free[k]]
            for a, b, cc, dd in mats:
                _accumulate(out, self.symbol_vector(c * a + d * cc, c * b + d * dd), v)
        return out

    def boundary(self, vec: dict) -> dict:
        cusps = self.cusps
        reps = p1(self.M).reps
        out: dict[int, Fraction] = {}
        for k, v in vec.items():
            a, b, c, d = _lift_to_sl2(*reps[self.free[k]], self.M)
            # the symbol is {b/d, a/c}; its boundary is [a/c] - [b/d]
            _accumulate(out, {cusps.index(a, c): 1}, v)
            _accumulate(out, {cusps.index(b, d): 1}, -v)
        return out


def _accumulate(out: dict, vec: dict, scale) -> None:
    for k, v in vec.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


def _presentation(M: int) -> tuple[list[int], list[dict]]:
    P = p1(M)
    n = len(P)
    reps = P.reps
    # two-term relations x + xS = 0: pair each symbol with (d : -c)
    sign = [1] * n
    rep = list(range(n))
    zero = [False] * n
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        c, d = reps[i]
        j = P.lookup(d, -c)
        seen[i] = seen[j] = True
        if i == j:
            zero[i] = True
        else:
            rep[j], sign[j] = i, -1
    variables = [i for i in range(n) if rep[i] == i and not zero[i]]
    var_index = {v: k for k, v in enumerate(variables)}

    def as_var(i):
        if zero[i]:
            return {}
        return {var_index[rep[i]]: Fraction(sign[i])}

    # three-term relations x + x tau + x tau^2 = 0 with (c:d)tau = (d : -c-d)
    rows = []
    done = [False] * n
    for i in range(n):
        if done[i]:
            continue
        c, d = reps[i]
        j = P.lookup(d, -c - d)
        k = P.lookup(-c - d, c)
        done[i] = done[j] = done[k] = True
        row: dict[int, Fraction] = {}
        for idx in {i, j, k} if i != j else {i}:
            _accumulate(row, as_var(idx), 3 if i == j else 1)
        if row:
            rows.append(row)
    reduced, pivots = _rref(rows, len(variables))
    pivot_set = set(pivots)
    free_vars = [k for k in range(len(variables)) if k not in pivot_set]
    free_pos = {k: t for t, k in enumerate(free_vars)}
    var_coords = []
    pivot_row = dict(zip(pivots, reduced))
    for k in range(len(variables)):
        if k in free_pos:
            var_coords.append({free_pos[k]: Fraction(1)})
        else:
            var_coords.append({free_pos[c]: -v for c, v in pivot_row[k].items() if c != k})
    coords = []
    for i in range(n):
        vec: dict[int, Fraction] = {}
        for k, s in as_var(i).items():
            _accumulate(vec, var_coords[k], s)
        coords.append(vec)
    free = [variables[k] for k in free_vars]
    return free, coords


@lru_cache(maxsize=None)
def cuspidal_space(M: int) -> ManinSpace:
    """Manin presentation with the cuspidal subspace and its plus part computed."""
    free, coords = _presentation(M)
    space = ManinSpace(M, free, coords)
    r = space.dimension
    units = [{k: Fraction(1)} for k in range(r)]
    boundary_cols = [space.boundary(e) for e in units]
    ncusps = len(space.cusps.reps)
    boundary_rows = [{k: col[c] for k, col in enumerate(boundary_cols) if c in col} for c in range(ncusps)]
    space.cuspidal = _kernel(boundary_rows, r)
    star_cols = [space.star(e) for e in units]
    star_minus_one = [
        {k: col.get(t, 0) - (1 if k == t else 0) for k, col in enumerate(star_cols)} for t in range(r)
    ]
    space.plus = _kernel(boundary_rows + star_minus_one, r)
    return space


def _matrix_on(space: ManinSpace, basis: list[dict], op) -> list[list[Fraction]]:
    """Matrix of op on the span of an echelon basis (column j = image of basis j)."""
    pivots = [min(v) for v in basis]
    images = [op(v) for v in basis]
    n = len(basis)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j, img in enumerate(images):
        rest = dict(img)
        for i, (p, v) in enumerate(zip(pivots, basis)):
            coef = rest.get(p, 0)
            mat[i][j] = Fraction(coef)
            if coef:
                _accumulate(rest, v, -coef)
        if rest:
            raise ArithmeticError("subspace is not invariant under the operator")
    return mat


def star_matrix(M: int) -> list[list[Fraction]]:
    space = cuspidal_space(M)
    return _matrix_on(space, space.cuspidal, space.star)


def hecke_matrix(M: int, ell: int, plus: bool = True) -> list[list[Fraction]]:
    """Matrix of T_ell on the plus part (or the whole) of the cuspidal subspace."""
    if not _is_prime(ell):
        raise ValueError("ell must be prime")
    if M % ell == 0:
        raise ValueError(f"T_{ell} at level {M}: ell divides the level, which is unsupported")
    space = cuspidal_space(M)
    basis = space.plus if plus else space.cuspidal
    return _matrix_on(space, basis, lambda v: space.hecke(v, ell))


@lru_cache(maxsize=None)
def hecke_charpoly(M: int, ell: int, plus: bool = True) -> IntPolynomial:
    """Characteristic polynomial of T_ell on the plus part (default) or the whole cuspidal space."""
    return charpoly_rational(hecke_matrix(M, ell, plus))


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))
