import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isozeta.exact import ONE, ContractError, IntPolynomial, RationalFunction, X
from isozeta.modsym import genus
from isozeta.verify import (CONVENTION, hasse_weil, q_new_charpoly, q_new_factor, run_verification,
                            verify_hecke_module_iso, verify_lemma_brandt_weil, verify_theorem_A)

from test_modsym import trace_of_frobenius

# isogeny classes of level 26; both are new at 13 because X_0(2) has genus 0
CURVES_26 = [[1, 0, 1, -5, -8], [1, -1, 1, -3, 3]]


def S_poly(*coeffs):
    return IntPolynomial(coeffs)


def test_hasse_weil_genus_zero_levels():
    for M in (1, 13):
        W = hasse_weil(M, 2)
        assert W.numerator_charpoly_factor == ONE
        assert W.value == RationalFunction(ONE, S_poly(1, -1) * S_poly(1, -2))


def test_hasse_weil_level_37():
    W = hasse_weil(37, 2)
    assert W.numerator_charpoly_factor == S_poly(1, 2, 2) * S_poly(1, 0, 2)
    assert W.numerator_charpoly_factor.degree == 2 * genus(37)


def test_hasse_weil_rejects_dividing_prime():
    with pytest.raises(ContractError):
        hasse_weil(26, 13)


def test_q_new_factor_examples():
    assert q_new_factor(13, 1, 2) == ONE
    assert q_new_factor(37, 1, 2) == S_poly(1, 2, 2) * S_poly(1, 0, 2)
    expected = ONE
    for ainvs in CURVES_26:
        expected = expected * S_poly(1, -trace_of_frobenius(ainvs, 3), 3)
    assert q_new_factor(13, 2, 3) == expected


@settings(max_examples=25)
@given(st.sampled_from([13, 37, 61]), st.sampled_from([1, 2, 3, 4, 5, 11]), st.sampled_from([2, 3, 5, 7, 11]))
def test_q_new_factor_degree_and_constant_term(q, N, p):
    if (q * N) % p == 0:
        return
    f = q_new_factor(q, N, p)
    assert f.coeffs[0] == 1
    assert f.degree == 2 * (genus(q * N) - 2 * genus(N))
    assert q_new_charpoly(q, N, p).degree == genus(q * N) - 2 * genus(N)


def test_q_new_factor_rejects_bad_parameters():
    with pytest.raises(ContractError):
        q_new_factor(13, 2, 2)
    with pytest.raises(ContractError):
        q_new_factor(13, 13, 2)


def test_brandt_weil_examples():
    c = verify_lemma_brandt_weil(2, 13, 1)
    assert c.passed and c.lhs.num == S_poly(1, -1) * S_poly(1, -2)
    c = verify_lemma_brandt_weil(2, 37, 1)
    assert c.passed
    assert c.lhs.num == S_poly(1, -1) * S_poly(1, -2) * S_poly(1, 2, 2) * S_poly(1, 0, 2)
    assert verify_lemma_brandt_weil(3, 13, 2).passed


def test_zeta_identity_examples():
    checks = verify_theorem_A(2, 13, 1)
    assert [c.name for c in checks] == ["zeta_identity_squared"]
    assert checks[0].passed and checks[0].detail == "2chi=-1"
    checks = verify_theorem_A(3, 13, 1)
    assert [c.name for c in checks] == ["zeta_identity_squared", "zeta_identity"]
    assert all(c.passed for c in checks) and checks[1].detail == "chi=-1"
    assert all(c.passed for c in verify_theorem_A(2, 37, 1))


def test_hecke_module_examples():
    (c,) = verify_hecke_module_iso(37, 1, [2])
    assert c.passed and c.lhs.num == X * (X + 2)
    (c,) = verify_hecke_module_iso(13, 1, [2])
    assert c.passed and c.lhs.num == ONE
    assert all(c.passed for c in verify_hecke_module_iso(13, 3, [2, 5, 7]))
    with pytest.raises(ContractError):
        verify_hecke_module_iso(13, 3, [3])


def test_div0_charpoly_independent_of_p():
    a = run_verification(3, 37, 2).checks
    b = run_verification(5, 37, 2).checks
    pick = lambda checks: {c.name: c.lhs for c in checks if c.name.startswith("hecke_module")}
    assert pick(a)["hecke_module_ell_7"] == pick(b)["hecke_module_ell_7"]


def test_report_serialization():
    r = run_verification(2, 13, 1)
    assert r.passed
    data = r.to_json()
    assert "timings" not in data
    assert set(r.to_json(include_timings=True)["timings"]) == {"brandt_weil", "zeta_identity", "hecke_module"}
    assert data["manifest"]["convention"] == CONVENTION
    assert data["parameters"] == {"p": 2, "q": 13, "N": 1}
    assert json.loads(json.dumps(data)) == data
    text = r.to_text()
    assert text.startswith("p=2 q=13 N=1: PASS")
    assert "brandt_weil" in text


def test_failed_check_is_reported_with_both_sides(monkeypatch):
    import isozeta.verify as verify_mod
    monkeypatch.setattr(verify_mod, "q_new_factor", lambda q, N, p: S_poly(1, 1))
    c = verify_mod.verify_lemma_brandt_weil(2, 13, 1)
    assert not c.passed
    report = verify_mod.VerificationReport(2, 13, 1, [c])
    assert not report.passed
    text = report.to_text()
    assert "FAIL" in text and "lhs = " in text and "rhs = " in text
