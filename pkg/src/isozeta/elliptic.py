"""Short Weierstrass curves y^2 = x^3 + a x + b over a FieldTower.

Field elements are the packed ints of :mod:`isozeta.ffield`; a curve records the
tower level its coefficients live at, and points are ``(x, y)`` tuples at that
level with ``None`` as the point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd

from . import fpoly
from .exact import ContractError
from .ffield import GF, FieldError, element_from_json, element_to_json, factorize, get_tower, is_prime
from .modsym import p1_list

INFINITY = None
POINT_COUNT_LIMIT = 10 ** 6


class ConsistencyError(RuntimeError):
    """An internal invariant failed; results computed so far cannot be trusted."""


class UnsupportedJError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticCurve:
    q: int
    a: int
    b: int
    level: int = 2
    seed: int = 0

    def __post_init__(self):
        F = self.field
        if F.add(F.mul(F.from_int(4), F.pow(self.a, 3)), F.mul(F.from_int(27), F.square(self.b))) == 0:
            raise ContractError("singular curve: 4a^3 + 27b^2 = 0")

    @property
    def tower(self):
        return get_tower(self.q, self.seed)

    @property
    def field(self) -> GF:
        return self.tower.level(self.level)

    def rhs(self, x: int) -> int:
        F = self.field
        return F.add(F.mul(F.add(F.square(x), self.a), x), self.b)

    def rhs_poly(self) -> list[int]:
        return fpoly.trim([self.b, self.a, 0, 1])

    def j_invariant(self) -> int:
        F = self.field
        a3 = F.mul(F.from_int(4), F.pow(self.a, 3))
        disc = F.add(a3, F.mul(F.from_int(27), F.square(self.b)))
        return F.div(F.mul(F.from_int(1728), a3), disc)

    def base_change(self, level: int) -> EllipticCurve:
        if level == self.level:
            return self
        tw = self.tower
        return EllipticCurve(self.q, tw.embed(self.a, self.level, level),
                             tw.embed(self.b, self.level, level), level, self.seed)

    # -- group law --------------------------------------------------------
    def is_on_curve(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return self.field.square(y) == self.rhs(x)

    def neg(self, P):
        return None if P is None else (P[0], self.field.neg(P[1]))

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.field
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 != y2 or y1 == 0:
                return None
            num = F.add(F.mul(F.from_int(3), F.square(x1)), self.a)
            lam = F.div(num, F.add(y1, y1))
        else:
            lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
        x3 = F.sub(F.sub(F.square(lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        result = None
        addend = P
        while n and addend is not None:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    def random_point(self, rng):
        F = self.field
        while True:
            x = F.random(rng)
            y = F.sqrt(self.rhs(x))
            if y is not None:
                return (x, F.neg(y) if rng.random() < 0.5 else y)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        return {"a": element_to_json(F, self.a), "b": element_to_json(F, self.b), "level": self.level}

    @classmethod
    def from_json(cls, data: dict, q: int, seed: int = 0) -> EllipticCurve:
        tower = get_tower(q, seed)
        level = int(data["level"])
        a = tower.embed(element_from_json(tower, data["a"]), int(data["a"]["level"]), level)
        b = tower.embed(element_from_json(tower, data["b"]), int(data["b"]["level"]), level)
        return cls(q, a, b, level, seed)


def point_to_json(F: GF, P) -> dict | None:
    if P is None:
        return None
    return {"x": element_to_json(F, P[0]), "y": element_to_json(F, P[1])}


def point_from_json(tower, data):
    if data is None:
        return None
    return (element_from_json(tower, data["x"]), element_from_json(tower, data["y"]))


def curve_from_j(q: int, j: int, level: int = 2, seed: int = 0) -> EllipticCurve:
    """The model y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2, whose j-invariant is j."""
    F = get_tower(q, seed).level(level)
    k = F.from_int(1728)
    if j in (0, k):
        raise UnsupportedJError("j = 0 and j = 1728 have extra automorphisms and are not supported")
    c = F.sub(k, j)
    a = F.mul(F.from_int(3), F.mul(j, c))
    b = F.mul(F.from_int(2), F.mul(j, F.square(c)))
    return EllipticCurve(q, a, b, level, seed)


# -- supersingularity ----------------------------------------------------------

def _over_quadratic(E: EllipticCurve) -> EllipticCurve:
    if E.level == 1:
        return E.base_change(2)
    if E.level != 2:
        raise ContractError("curve must be defined over F_q or F_{q^2}")
    return E


def count_points(E: EllipticCurve) -> int:
    """#E over the field of definition, by summing the quadratic character."""
    F = E.field
    total = 1
    for x in F.elements():
        v = E.rhs(x)
        total += 1 if v == 0 else (2 if F.is_square(v) else 0)
    return total


def deuring_polynomial(q: int) -> list[int]:
    m = (q - 1) // 2
    return [comb(m, i) ** 2 % q for i in range(m + 1)]


def lambda_to_j(F: GF, lam: int) -> int:
    num = F.pow(F.add(F.sub(F.square(lam), lam), 1), 3)
    den = F.square(F.mul(lam, F.sub(lam, 1)))
    return F.div(F.mul(F.from_int(256), num), den)


def _legendre_lambdas(F: GF, tower, j: int) -> list[int]:
    """Roots in F of 256(l^2-l+1)^3 - j l^2 (l-1)^2."""
    one = 1
    t = [one, F.neg(one), one]
    cube = fpoly.mul(F, fpoly.mul(F, t, t), t)
    sq = fpoly.mul(F, [0, F.neg(one), one], [0, F.neg(one), one])
    f = fpoly.sub(F, fpoly.scale(F, cube, F.from_int(256)), fpoly.scale(F, sq, j))
    return tower.roots(f, F.k, F.k)


def is_supersingular(E: EllipticCurve, method: str | None = None) -> bool:
    """Supersingularity of a curve over F_q or F_{q^2}.

    ``method`` is "count" (trace of Frobenius over F_{q^2} is 0 mod q) or
    "deuring" (some Legendre lambda of E is a root of the Deuring polynomial);
    by default point counting is used while q^2 <= 10^6.
    """
    E = _over_quadratic(E)
    q = E.q
    if method is None:
        method = "count" if q * q <= POINT_COUNT_LIMIT else "deuring"
    if method == "count":
        trace = q * q + 1 - count_points(E)
        return trace % q == 0
    if method != "deuring":
        raise ValueError(f"unknown method {method!r}")
    F = E.field
    H = deuring_polynomial(q)
    return any(fpoly.evaluate(F, H, lam) == 0 for lam in _legendre_lambdas(F, E.tower, E.j_invariant()))


@lru_cache(maxsize=None)
def _supersingular_js(q: int, seed: int) -> tuple[int, ...]:
    if not is_prime(q) or q % 12 != 1:
        raise ContractError("q must be prime ≡ 1 (mod 12)")
    tower = get_tower(q, seed)
    F = tower.level(2)
    lams = tower.roots(deuring_polynomial(q), 1, 2)
    js = sorted({lambda_to_j(F, lam) for lam in lams}, key=F.coords)
    if len(js) != (q - 1) // 12:
        raise ConsistencyError(f"found {len(js)} supersingular j-invariants, expected {(q - 1) // 12}")
    return tuple(js)


def supersingular_j_invariants(q: int, seed: int = 0) -> list[int]:
    """Supersingular j-invariants in F_{q^2}, sorted by coordinates."""
    return list(_supersingular_js(q, seed))


def supersingular_j_bruteforce(q: int, seed: int = 0) -> list[int]:
    """Independent oracle: point-count every j in F_{q^2} (vectorized)."""
    import numpy as np

    tower = get_tower(q, seed)
    F = tower.level(2)
    Q = F.order
    log = np.asarray(F.log_table(), dtype=np.int64)
    chi = np.where(log % 2 == 0, 1, -1).astype(np.int32)
    chi[0] = 0
    m0, m1 = F.modulus[0], F.modulus[1]

    def mul(a0, a1, b0, b1):
        c2 = a1 * b1
        return (a0 * b0 - c2 * m0) % q, (a0 * b1 + a1 * b0 - c2 * m1) % q

    xs = np.arange(Q, dtype=np.int32)
    x0, x1 = xs % q, xs // q
    sq = mul(x0, x1, x0, x1)
    cube = mul(sq[0], sq[1], x0, x1)
    # curve_from_j coefficients for every j at once; j = 0 and 1728 get fixed models
    j0, j1 = x0, x1
    c0, c1 = (1728 - j0) % q, (-j1) % q
    jc = mul(j0, j1, c0, c1)
    a0, a1 = 3 * jc[0] % q, 3 * jc[1] % q
    jcc = mul(jc[0], jc[1], c0, c1)
    b0, b1 = 2 * jcc[0] % q, 2 * jcc[1] % q
    a0[0], a1[0], b0[0], b1[0] = 0, 0, 1, 0
    k = 1728 % q
    a0[k], a1[k], b0[k], b1[k] = 1, 0, 0, 0
    found = []
    chunk = max(1, (1 << 16) // Q)
    for lo in range(0, Q, chunk):
        sl = slice(lo, lo + chunk)
        ax = mul(a0[sl, None], a1[sl, None], x0[None, :], x1[None, :])
        v0 = (cube[0][None, :] + ax[0] + b0[sl, None]) % q
        v1 = (cube[1][None, :] + ax[1] + b1[sl, None]) % q
        traces = -chi[v0 + q * v1].sum(axis=1)
        found.extend(int(j) for j in np.nonzero(traces % q == 0)[0] + lo)
    return sorted(found, key=F.coords)


# -- division polynomials --------------------------------------------------------

def _f_polys(E: EllipticCurve, m: int) -> list[list[int]]:
    """f_0..f_m with psi_n = f_n for odd n and psi_n = y f_n for even n."""
    F = E.field
    a, b = E.a, E.b
    c = F.from_int
    mul, sub, scale = fpoly.mul, fpoly.sub, fpoly.scale
    R = E.rhs_poly()
    R2 = mul(F, R, R)
    a2 = F.square(a)
    f = [[], [1], [c(2)]]
    f.append(fpoly.trim([F.neg(a2), F.mul(c(12), b), F.mul(c(6), a), 0, c(3)]))
    inner = [F.neg(F.add(F.mul(c(8), F.square(b)), F.pow(a, 3))), F.neg(F.mul(c(4), F.mul(a, b))),
             F.neg(F.mul(c(5), a2)), F.mul(c(20), b), F.mul(c(5), a), 0, 1]
    f.append(scale(F, fpoly.trim(inner), c(4)))
    half = F.inv(c(2))

    def cube(p):
        return mul(F, mul(F, p, p), p)

    for i in range(5, m + 1):
        n = i // 2
        if i % 2:
            left = mul(F, f[n + 2], cube(f[n]))
            right = mul(F, f[n - 1], cube(f[n + 1]))
            if n % 2 == 0:
                left = mul(F, R2, left)
            else:
                right = mul(F, R2, right)
            f.append(sub(F, left, right))
        else:
            t = sub(F, mul(F, f[n + 2], mul(F, f[n - 1], f[n - 1])),
                    mul(F, f[n - 2], mul(F, f[n + 1], f[n + 1])))
            f.append(scale(F, mul(F, f[n], t), half))
    return f[:m + 1]


def division_polynomial(E: EllipticCurve, m: int) -> list[int]:
    """psi_m for odd m and psi_m * y / 2 for even m: a polynomial in x whose roots
    are the x-coordinates of the nonzero m-torsion points."""
    if m < 1:
        raise ContractError("m must be positive")
    fm = _f_polys(E, max(m, 4))[m]
    if m % 2:
        return fm
    F = E.field
    return fpoly.scale(F, fpoly.mul(F, E.rhs_poly(), fm), F.inv(F.from_int(2)))


# -- subgroups ------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupKernel:
    """A cyclic subgroup: monic kernel polynomial (coefficients at ``level``,
    lowest first) and optionally a generator point at ``generator_level``."""

    order: int
    kernel_poly: tuple[int, ...]
    level: int = 2
    generator: tuple[int, int] | None = field(default=None, compare=False)
    generator_level: int | None = field(default=None, compare=False)

    def key(self, F: GF) -> tuple:
        return fpoly.poly_key(F, self.kernel_poly)

    def x_coordinates(self, E: EllipticCurve) -> list[int]:
        """Distinct x-coordinates of the nonzero points, at the generator's level."""
        if self.order == 1:
            return []
        if self.generator is None:
            raise ContractError("subgroup has no generator")
        EL = E.base_change(self.generator_level)
        xs = []
        P = self.generator
        for _ in range(self.order // 2):
            xs.append(P[0])
            P = EL.add(P, self.generator)
        return xs

    def to_json(self, tower) -> dict:
        F = tower.level(self.level)
        gen = None
        if self.generator is not None:
            gen = point_to_json(tower.level(self.generator_level), self.generator)
        return {
            "order": self.order,
            "kernel_poly": [element_to_json(F, c) for c in self.kernel_poly],
            "generator": gen,
        }

    @classmethod
    def from_json(cls, data: dict, tower) -> SubgroupKernel:
        coeffs = tuple(element_from_json(tower, c) for c in data["kernel_poly"])
        level = int(data["kernel_poly"][0]["level"]) if data["kernel_poly"] else 2
        gen = data.get("generator")
        gen_level = int(gen["x"]["level"]) if gen else None
        return cls(int(data["order"]), coeffs, level, point_from_json(tower, gen), gen_level)


def frobenius_scalar(E: EllipticCurve) -> int:
    """c in {q, -q} with Frobenius over F_{q^2} acting as multiplication by c."""
    if E.level != 2:
        raise ContractError("Frobenius scalar is defined for curves over F_{q^2}")
    q = E.q
    rng = E.tower.rng("frobenius", E.a, E.b)
    for _ in range(64):
        P = E.random_point(rng)
        if E.add(P, P) is None:
            continue
        minus = E.mul(q - 1, P) is None
        plus = E.mul(q + 1, P) is None
        if minus != plus:
            return q if minus else -q
        break
    raise ContractError("Frobenius is not a scalar: the curve is not supersingular with trace ±2q")


def _is_basis(E: EllipticCurve, P, Q, M: int) -> bool:
    for r in factorize(M):
        A, B = E.mul(M // r, P), E.mul(M // r, Q)
        if A is None or B is None:
            return False
        mult = A
        for _ in range(r - 1):
            if mult == B:
                return False
            mult = E.add(mult, A)
    return True


def _point_key(F: GF, P) -> tuple:
    return (F.coords(P[0]), F.coords(P[1]))


def torsion_level(E: EllipticCurve, M: int) -> int:
    """Smallest tower level 2k with E[M] contained in E(F_{q^{2k}})."""
    c = frobenius_scalar(E)
    for k in range(1, M * M + 1):
        if (c ** k - 1) % M == 0:
            return 2 * k
    raise ConsistencyError("torsion level search exceeded its cap")  # unreachable


def cyclic_subgroups(E: EllipticCurve, M: int) -> list[SubgroupKernel]:
    """All cyclic subgroups of order M of a supersingular curve over F_{q^2}."""
    E = _over_quadratic(E)
    if M < 1 or gcd(M, E.q) != 1:
        raise ContractError("order must be positive and prime to q")
    if M == 1:
        return [SubgroupKernel(1, (1,), 2, None, 2)]
    L = torsion_level(E, M)
    c = frobenius_scalar(E)
    cofactor = abs(c ** (L // 2) - 1) // M
    EL = E.base_change(L)
    FL = EL.field
    tower = E.tower
    rng = tower.rng("torsion-basis", E.a, E.b, M)
    while True:
        P1 = EL.mul(cofactor, EL.random_point(rng))
        P2 = EL.mul(cofactor, EL.random_point(rng))
        if _is_basis(EL, P1, P2, M):
            break
    units = [u for u in range(1, M) if gcd(u, M) == 1]
    out = []
    for cc, dd in p1_list(M):
        G = EL.add(EL.mul(cc, P1), EL.mul(dd, P2))
        multiples = [G]
        for _ in range(M - 2):
            multiples.append(EL.add(multiples[-1], G))
        if EL.add(multiples[-1], G) is not None or None in multiples:
            raise ConsistencyError("generator does not have the expected order")
        xs = sorted({P[0] for P in multiples})
        if len(xs) != M // 2:
            raise ConsistencyError("unexpected number of x-coordinates in a cyclic subgroup")
        h = fpoly.from_roots(FL, xs)
        try:
            h2 = tuple(tower.restrict(coef, L, 2) for coef in h)
        except FieldError as exc:
            raise ConsistencyError("kernel polynomial is not defined over F_{q^2}") from exc
        gen = min((multiples[u - 1] for u in units), key=lambda P: _point_key(FL, P))
        out.append(SubgroupKernel(M, h2, 2, gen, L))
    F2 = E.field
    out.sort(key=lambda s: s.key(F2))
    return out


def isogeny_kernels(E: EllipticCurve, ell: int) -> list[SubgroupKernel]:
    """Kernel polynomials over F_{q^2} of the ell+1 cyclic subgroups of prime order ell.

    Only kernel polynomials are produced (no generators), so no field extension is
    needed: for odd ell, x([i]P) is computed symbolically in F[x]/(g) for an
    irreducible factor g of the division polynomial.
    """
    E = _over_quadratic(E)
    if not is_prime(ell) or ell == E.q:
        raise ContractError("ell must be a prime different from q")
    F = E.field
    tower = E.tower
    if ell == 2:
        roots = tower.roots(E.rhs_poly(), 2, 2)
        kernels = [(F.neg(r), 1) for r in roots]
    else:
        rng = tower.rng("isogeny-kernels", E.a, E.b, ell)
        factors = fpoly.factor_squarefree(F, fpoly.monic(F, division_polynomial(E, ell)), rng)
        fs = _f_polys(E, (ell + 1) // 2)
        kernels = []
        while factors:
            h = _kernel_from_factor(E, factors[0], fs, ell)
            kernels.append(tuple(h))
            factors = [g for g in factors if fpoly.rem(F, h, g)]
    if len(kernels) != ell + 1:
        raise ConsistencyError(f"found {len(kernels)} subgroups of order {ell}, expected {ell + 1}")
    out = [SubgroupKernel(ell, h, 2) for h in kernels]
    out.sort(key=lambda s: s.key(F))
    return out


def _kernel_from_factor(E: EllipticCurve, g, fs, ell: int) -> list[int]:
    F = E.field
    pm = fpoly.PolyModulus(F, g)
    R = pm.reduce(E.rhs_poly())
    fr = [pm.reduce(p) for p in fs]
    theta = pm.reduce([0, 1])
    xs = [theta]
    for i in range(2, (ell - 1) // 2 + 1):
        num = pm.mul(fr[i - 1], fr[i + 1])
        den = pm.mul(fr[i], fr[i])
        if i % 2:
            num = pm.mul(num, R)
        else:
            den = pm.mul(den, R)
        xs.append(fpoly.sub(F, theta, pm.mul(num, fpoly.inv_mod(F, den, g))))
    # product of (X - x_i) with coefficients in F[x]/(g)
    poly = [[1]]
    for xi in xs:
        nxt = [[] for _ in range(len(poly) + 1)]
        for k, coef in enumerate(poly):
            nxt[k + 1] = fpoly.add(F, nxt[k + 1], coef)
            nxt[k] = fpoly.sub(F, nxt[k], pm.mul(coef, xi))
        poly = nxt
    if any(len(coef) > 1 for coef in poly):
        raise ConsistencyError("kernel polynomial is not defined over the base field")
    return [coef[0] if coef else 0 for coef in poly]


# -- isogenies ----------------------------------------------------------------------

@dataclass
class Isogeny:
    """x -> num(x)/den(x), y -> y * d/dx(num/den), coefficients at the domain level."""

    domain: EllipticCurve
    codomain: EllipticCurve
    kernel: SubgroupKernel
    x_num: list[int]
    x_den: list[int]
    _lifted: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.kernel.order

    def _at(self, level: int):
        maps = self._lifted.get(level)
        if maps is None:
            F = self.domain.tower.level(level)
            emb = self.domain.tower.embedding(self.domain.level, level)
            num = [emb(c) for c in self.x_num]
            den = [emb(c) for c in self.x_den]
            maps = (num, den, fpoly.derivative(F, num), fpoly.derivative(F, den))
            self._lifted[level] = maps
        return maps

    def map_x(self, x: int, level: int | None = None):
        """Image x-coordinate, or None when x belongs to a kernel point."""
        level = self.domain.level if level is None else level
        F = self.domain.tower.level(level)
        num, den, _, _ = self._at(level)
        d = fpoly.evaluate(F, den, x)
        if d == 0:
            return None
        return F.div(fpoly.evaluate(F, num, x), d)

    def __call__(self, P, level: int | None = None):
        if P is None:
            return None
        level = self.domain.level if level is None else level
        F = self.domain.tower.level(level)
        num, den, dnum, dden = self._at(level)
        x, y = P
        d = fpoly.evaluate(F, den, x)
        if d == 0:
            return None
        n = fpoly.evaluate(F, num, x)
        slope = F.div(F.sub(F.mul(fpoly.evaluate(F, dnum, x), d), F.mul(n, fpoly.evaluate(F, dden, x))),
                      F.square(d))
        return (F.div(n, d), F.mul(y, slope))


def _coeff(p, k: int) -> int:
    return p[k] if 0 <= k < len(p) else 0


def velu(E: EllipticCurve, D: SubgroupKernel) -> Isogeny:
    """Normalized isogeny E -> E/D for a subgroup of prime order."""
    F = E.field
    ell = D.order
    if not is_prime(ell) or ell == E.q:
        raise ContractError("kernel order must be a prime different from q")
    if D.level != E.level:
        raise ContractError("kernel polynomial and curve live at different levels")
    if D.generator is not None:
        EG = E.base_change(D.generator_level)
        if not EG.is_on_curve(D.generator) or EG.mul(ell, D.generator) is not None:
            raise ContractError("generator is not a point of order ell on the curve")
    h = list(D.kernel_poly)
    d = len(h) - 1
    if h[-1] != 1 or d != ell // 2 or fpoly.rem(F, division_polynomial(E, ell), h):
        raise ContractError("kernel polynomial does not describe a subgroup of order ell")
    a, b = E.a, E.b
    c = F.from_int
    R = E.rhs_poly()
    if ell == 2:
        t = fpoly.trim([a, 0, c(3)])
        u = []
    else:
        t = fpoly.trim([F.add(a, a), 0, c(6)])
        u = fpoly.scale(F, R, c(4))
    hp = fpoly.derivative(F, h)
    Rt = fpoly.rem(F, fpoly.mul(F, t, hp), h)
    Ru = fpoly.rem(F, fpoly.mul(F, u, hp), h)
    w_poly = fpoly.rem(F, fpoly.mul(F, fpoly.add(F, u, fpoly.shift(t, 1)), hp), h)
    v, w = _coeff(Rt, d - 1), _coeff(w_poly, d - 1)
    A = F.sub(a, F.mul(c(5), v))
    B = F.sub(b, F.mul(c(7), w))
    h2 = fpoly.mul(F, h, h)
    num = fpoly.shift(h2, 1)
    num = fpoly.add(F, num, fpoly.mul(F, Rt, h))
    num = fpoly.add(F, num, fpoly.mul(F, Ru, hp))
    num = fpoly.sub(F, num, fpoly.mul(F, fpoly.derivative(F, Ru), h))
    codomain = EllipticCurve(E.q, A, B, E.level, E.seed)
    return Isogeny(E, codomain, D, num, h2)


def twist_scalar(src: EllipticCurve, dst: EllipticCurve) -> int:
    """s = u^2 for the isomorphism (x, y) -> (s x, u^3 y) from src to dst."""
    F = src.field
    if src.level != dst.level:
        raise ContractError("curves must be given at the same level")
    if src.j_invariant() != dst.j_invariant():
        raise ContractError("curves have different j-invariants")
    if 0 in (src.a, src.b, dst.a, dst.b):
        raise UnsupportedJError("j = 0 and j = 1728 are not supported")
    return F.div(F.mul(dst.b, src.a), F.mul(src.b, dst.a))


def transport_kernel(F: GF, h, s: int) -> tuple[int, ...]:
    """Kernel polynomial of the image subgroup under x -> s x."""
    d = len(h) - 1
    out = []
    power = 1
    for m in range(d + 1):
        out.append(F.mul(h[d - m], power))
        power = F.mul(power, s)
    return tuple(reversed(out))


def isomorphism_match(src, dst) -> bool:
    """Whether an isomorphism of the curves carries src's subgroup onto dst's."""
    (E1, C1), (E2, C2) = src, dst
    if C1.order != C2.order:
        return False
    if C1.level != E1.level or C2.level != E2.level:
        raise ContractError("kernel polynomials must live at the curve level")
    s = twist_scalar(E1, E2)
    return transport_kernel(E1.field, C1.kernel_poly, s) == tuple(C2.kernel_poly)
