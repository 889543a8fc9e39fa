"""The supersingular isogeny graph with Gamma_0(N)-level structure over F_q-bar."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import fpoly
from .elliptic import (ConsistencyError, EllipticCurve, SubgroupKernel, curve_from_j, cyclic_subgroups,
                       isogeny_kernels, supersingular_j_invariants, twist_scalar, velu)
from .exact import ContractError, IntMatrix, IntPolynomial, bass_determinant, charpoly
from .ffield import FieldError, element_to_json, get_tower, is_prime

SCHEMA_VERSION = 1
FORMATS = ("json", "dot", "csv")


@dataclass(frozen=True)
class Vertex:
    index: int
    curve: EllipticCurve
    level_structure: SubgroupKernel
    key: tuple


@dataclass(frozen=True)
class LevelGraph:
    q: int
    p: int
    N: int
    vertices: tuple
    brandt: IntMatrix
    seed: int = 0

    def __len__(self):
        return len(self.vertices)

    def euler_char_times_2(self) -> int:
        return 2 * len(self.vertices) - sum(self.brandt.entries)


@dataclass(frozen=True)
class IharaZeta:
    """Z(S) = (1 - S^2)^(euler_char_times_2 / 2) / denominator."""

    denominator: IntPolynomial
    euler_char_times_2: int


def check_parameters(q: int, N: int, p: int | None = None):
    if not is_prime(q) or q % 12 != 1:
        raise ContractError("q must be prime ≡ 1 (mod 12)")
    if N < 1 or gcd(q, N) != 1:
        raise ContractError("N must be a positive integer prime to q")
    if p is not None:
        if not is_prime(p):
            raise ContractError("p must be prime")
        if gcd(p, q * N) != 1:
            raise ContractError("p must be prime to qN")


def subgroup_count(N: int) -> int:
    """d_N = N * prod over primes l | N of (1 + 1/l)."""
    out, n, d = N, N, 2
    while d * d <= n:
        if n % d == 0:
            out = out // d * (d + 1)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out = out // n * (n + 1)
    return out


def vertex_key(F, j: int, C: SubgroupKernel) -> tuple:
    return (F.coords(j), C.key(F))


def build_vertices(q: int, N: int, seed: int = 0) -> list[Vertex]:
    """Pairs (E, C): canonical model per supersingular j with each cyclic order-N subgroup."""
    check_parameters(q, N)
    F = get_tower(q, seed).level(2)
    out = []
    for j in supersingular_j_invariants(q, seed):
        E = curve_from_j(q, j, 2, seed)
        for C in cyclic_subgroups(E, N):
            out.append(Vertex(len(out), E, C, vertex_key(F, j, C)))
    expected = (q - 1) * subgroup_count(N) // 12
    if len(out) != expected:
        raise ConsistencyError(f"built {len(out)} vertices, expected {expected}")
    return out


def _brandt_rows(vertices, ell: int, rows: range) -> list[list[int]]:
    E0 = vertices[0].curve
    tower = E0.tower
    F = E0.field
    index = {v.key: v.index for v in vertices}
    canonical = {}
    for v in vertices:
        canonical.setdefault(v.curve.j_invariant(), v.curve)
    isogenies: dict[int, list] = {}
    out = []
    for i in rows:
        v = vertices[i]
        j = v.curve.j_invariant()
        if j not in isogenies:
            isogenies[j] = [velu(v.curve, D) for D in isogeny_kernels(v.curve, ell)]
        C = v.level_structure
        xs = C.x_coordinates(v.curve)
        row = [0] * len(vertices)
        for phi in isogenies[j]:
            target_j = phi.codomain.j_invariant()
            target = canonical.get(target_j)
            if target is None:
                raise ConsistencyError("isogeny codomain is not a vertex curve")
            s = twist_scalar(phi.codomain, target)
            if C.order == 1:
                h = (1,)
            else:
                L = C.generator_level
                FL = tower.level(L)
                sL = tower.embed(s, 2, L)
                images = []
                for x in xs:
                    X = phi.map_x(x, L)
                    if X is None:
                        raise ConsistencyError("level structure meets the isogeny kernel")
                    images.append(FL.mul(sL, X))
                try:
                    h = tuple(tower.restrict(c, L, 2) for c in fpoly.from_roots(FL, images))
                except FieldError as exc:
                    raise ConsistencyError("image subgroup is not defined over F_{q^2}") from exc
            col = index.get((F.coords(target_j), fpoly.poly_key(F, h)))
            if col is None:
                raise ConsistencyError("isogeny target matches no vertex")
            row[col] += 1
        out.append(row)
    return out


def brandt_matrix(vertices, ell: int, jobs: int = 1) -> IntMatrix:
    """b_ij = number of order-ell subgroups D of E_i with (E_i/D, (C_i+D)/D) isomorphic to vertex j."""
    vertices = list(vertices)
    if not vertices:
        raise ContractError("empty vertex list")
    q = vertices[0].curve.q
    N = vertices[0].level_structure.order
    if not is_prime(ell) or gcd(ell, q * N) != 1:
        raise ContractError("ell must be a prime not dividing qN")
    n = len(vertices)
    if jobs <= 1 or n < 2 * jobs:
        rows = _brandt_rows(vertices, ell, range(n))
    else:
        bounds = [n * k // jobs for k in range(jobs + 1)]
        with ProcessPoolExecutor(jobs) as pool:
            futures = [pool.submit(_brandt_rows, vertices, ell, range(lo, hi))
                       for lo, hi in zip(bounds, bounds[1:])]
            rows = [r for fut in futures for r in fut.result()]
    B = IntMatrix.from_rows(rows)
    if any(s != ell + 1 for s in B.row_sums()):
        raise ConsistencyError("Brandt row sums differ from ell + 1")
    return B


def build_graph(q: int, p: int, N: int, seed: int = 0, jobs: int = 1) -> LevelGraph:
    check_parameters(q, N, p)
    vertices = build_vertices(q, N, seed)
    return LevelGraph(q, p, N, tuple(vertices), brandt_matrix(vertices, p, jobs), seed)


def ihara_zeta(g: LevelGraph) -> IharaZeta:
    return IharaZeta(bass_determinant(charpoly(g.brandt), g.p), g.euler_char_times_2())


# -- export -------------------------------------------------------------------------

def manifest(g: LevelGraph) -> dict:
    tower = get_tower(g.q, g.seed)
    levels = {1, 2} | {v.level_structure.generator_level or 2 for v in g.vertices}
    return {
        "q": g.q, "p": g.p, "N": g.N, "seed": g.seed,
        "defining_polynomials": {str(k): list(tower.level(k).modulus) for k in sorted(levels)},
    }


def graph_to_json(g: LevelGraph) -> dict:
    tower = get_tower(g.q, g.seed)
    F = tower.level(2)
    return {
        "schema": SCHEMA_VERSION,
        "q": g.q, "p": g.p, "N": g.N, "seed": g.seed,
        "vertices": [
            {
                "index": v.index,
                "j": element_to_json(F, v.curve.j_invariant()),
                "curve": v.curve.to_json(),
                "level_structure": v.level_structure.to_json(tower),
            }
            for v in g.vertices
        ],
        "brandt": [[str(x) for x in row] for row in g.brandt.tolist()],
        "euler_char_times_2": g.euler_char_times_2(),
        "manifest": manifest(g),
    }


def graph_from_json(data: dict) -> LevelGraph:
    if data.get("schema") != SCHEMA_VERSION:
        raise ContractError(f"unsupported graph schema {data.get('schema')!r}")
    q, seed = int(data["q"]), int(data["seed"])
    tower = get_tower(q, seed)
    F = tower.level(2)
    vertices = []
    for item in data["vertices"]:
        E = EllipticCurve.from_json(item["curve"], q, seed)
        C = SubgroupKernel.from_json(item["level_structure"], tower)
        vertices.append(Vertex(int(item["index"]), E, C, vertex_key(F, E.j_invariant(), C)))
    B = IntMatrix.from_rows([[int(x) for x in row] for row in data["brandt"]])
    return LevelGraph(q, int(data["p"]), int(data["N"]), tuple(vertices), B, seed)


def _dot(g: LevelGraph) -> str:
    F = get_tower(g.q, g.seed).level(2)
    lines = [f"graph X_{g.p}_{g.q}_{g.N} {{"]
    for v in g.vertices:
        j = ",".join(map(str, F.coords(v.curve.j_invariant())))
        lines.append(f'  v{v.index} [label="{v.index}: j=({j})"];')
    n = len(g.vertices)
    for i in range(n):
        for j in range(i, n):
            lines.extend(f"  v{i} -- v{j};" for _ in range(g.brandt[i, j]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(g: LevelGraph, fmt: str) -> bytes:
    if fmt == "json":
        text = json.dumps(graph_to_json(g), indent=2, sort_keys=True) + "\n"
    elif fmt == "dot":
        text = _dot(g)
    elif fmt == "csv":
        text = "".join(",".join(map(str, row)) + "\n" for row in g.brandt.tolist())
    else:
        raise ContractError(f"unknown export format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return text.encode()
