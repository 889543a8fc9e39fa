import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isozeta import fpoly
from isozeta.elliptic import SubgroupKernel, isogeny_kernels, isomorphism_match, velu
from isozeta.exact import ContractError, IntMatrix, IntPolynomial
from isozeta.graph import (brandt_matrix, build_graph, build_vertices, export_graph, graph_from_json,
                           graph_to_json, ihara_zeta, subgroup_count)

CONFIGS = [(q, N) for q in (13, 37) for N in (1, 2, 3)]


def test_subgroup_count_values():
    assert [subgroup_count(n) for n in range(1, 13)] == [1, 3, 4, 6, 6, 12, 8, 12, 12, 18, 12, 24]


@pytest.mark.parametrize("q,N,expected", [(13, 1, 1), (13, 2, 3), (37, 1, 3), (37, 3, 12), (61, 2, 15)])
def test_vertex_counts(q, N, expected):
    vertices = build_vertices(q, N)
    assert len(vertices) == expected == (q - 1) * subgroup_count(N) // 12
    assert len({v.key for v in vertices}) == expected
    assert [v.index for v in vertices] == list(range(expected))


def test_one_vertex_case():
    g = build_graph(13, 2, 1)
    assert g.brandt.tolist() == [[3]]
    z = ihara_zeta(g)
    assert z.denominator == IntPolynomial((1, -3, 2))
    assert z.euler_char_times_2 == -1


def test_parameter_preconditions():
    with pytest.raises(ContractError):
        build_vertices(12, 1)
    with pytest.raises(ContractError):
        build_vertices(13, 13)
    with pytest.raises(ContractError):
        build_graph(13, 2, 2)
    with pytest.raises(ContractError):
        brandt_matrix(build_vertices(13, 1), 13)


@pytest.mark.parametrize("q,N", CONFIGS)
def test_brandt_properties(q, N):
    vertices = build_vertices(q, N)
    n = len(vertices)
    mats = {}
    for ell in (2, 3, 5, 7):
        if (q * N) % ell == 0:
            continue
        B = brandt_matrix(vertices, ell)
        assert B.is_symmetric()
        assert all(x >= 0 for x in B.entries)
        assert B.row_sums() == [ell + 1] * n
        ones = IntMatrix.from_rows([[1]] * n)
        assert (B @ ones).tolist() == [[ell + 1]] * n
        mats[ell] = B
    for a in mats:
        for b in mats:
            assert mats[a] @ mats[b] == mats[b] @ mats[a]


def image_subgroup(phi, C):
    """Push the generator of C through phi and rebuild its kernel polynomial over F_{q^2}."""
    E = phi.codomain
    tower = E.tower
    L = C.generator_level
    FL = tower.level(L)
    EL = E.base_change(L)
    P = phi(C.generator, L)
    xs = [EL.mul(k, P)[0] for k in range(1, C.order // 2 + 1)]
    h = tuple(tower.restrict(c, L, 2) for c in fpoly.from_roots(FL, xs))
    return SubgroupKernel(C.order, h, 2)


def brandt_by_scan(vertices, ell):
    n = len(vertices)
    rows = []
    for v in vertices:
        row = [0] * n
        for D in isogeny_kernels(v.curve, ell):
            phi = velu(v.curve, D)
            C = v.level_structure
            image = SubgroupKernel(1, (1,), 2) if C.order == 1 else image_subgroup(phi, C)
            hits = [w.index for w in vertices if w.curve.j_invariant() == phi.codomain.j_invariant()
                    and isomorphism_match((phi.codomain, image), (w.curve, w.level_structure))]
            assert len(hits) == 1
            row[hits[0]] += 1
        rows.append(row)
    return rows


@pytest.mark.parametrize("q,N,ell", [(13, 2, 3), (13, 3, 2), (37, 1, 2), (37, 2, 3), (37, 3, 5)])
def test_brandt_matches_isomorphism_scan(q, N, ell):
    vertices = build_vertices(q, N)
    assert brandt_matrix(vertices, ell).tolist() == brandt_by_scan(vertices, ell)


def test_brandt_q37_values():
    B = brandt_matrix(build_vertices(37, 1), 2)
    assert sorted(B.tolist()) == sorted([[1, 1, 1], [1, 0, 2], [1, 2, 0]])


def test_brandt_parallel_rows_agree():
    vertices = build_vertices(37, 2)
    assert brandt_matrix(vertices, 3, jobs=2) == brandt_matrix(vertices, 3)


@settings(max_examples=12)
@given(st.sampled_from([13, 37, 61]), st.sampled_from([2, 3, 5, 7]))
def test_euler_characteristic_for_trivial_level(q, p):
    g = build_graph(q, p, 1)
    n = (q - 1) // 12
    assert g.euler_char_times_2() == -n * (p - 1)
    z = ihara_zeta(g)
    assert z.denominator.coeffs[0] == 1
    assert z.denominator.degree == 2 * n


def test_exports_one_vertex():
    g = build_graph(13, 2, 1)
    dot = export_graph(g, "dot").decode()
    assert dot.count("v0 -- v0") == 3
    assert dot.count("[label=") == 1
    assert export_graph(g, "csv") == b"3\n"
    with pytest.raises(ContractError):
        export_graph(g, "xml")


@pytest.mark.parametrize("q,p,N", [(13, 2, 1), (13, 5, 3), (37, 3, 2)])
def test_json_round_trip(q, p, N):
    g = build_graph(q, p, N)
    data = json.loads(export_graph(g, "json"))
    back = graph_from_json(data)
    assert back == g
    assert graph_to_json(back) == data


def test_dot_edge_count_matches_brandt():
    g = build_graph(37, 3, 2)
    n = len(g)
    expected = sum(g.brandt[i, j] for i in range(n) for j in range(i, n))
    assert export_graph(g, "dot").decode().count(" -- ") == expected


def test_json_rejects_unknown_schema():
    data = json.loads(export_graph(build_graph(13, 2, 1), "json"))
    data["schema"] = 99
    with pytest.raises(ContractError):
        graph_from_json(data)
