from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isozeta.exact import (ONE, X, ContractError, DimensionError, DivisibilityError, IntMatrix, IntPolynomial,
                           RationalFunction, bass_determinant, charpoly, charpoly_rational, poly_exact_div,
                           poly_gcd, polynomial_matrix_det, rf_div, rf_eq, rf_mul, roots_within, sturm_count)

S = X


def P(*coeffs):
    return IntPolynomial(coeffs)


small_ints = st.integers(-5, 5)


@st.composite
def square_matrices(draw, lo=1, hi=6):
    n = draw(st.integers(lo, hi))
    return [[draw(small_ints) for _ in range(n)] for _ in range(n)]


@st.composite
def polys(draw, max_degree=4, nonzero=False):
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=1, max_size=max_degree + 1))
    p = IntPolynomial(coeffs)
    if nonzero and p.is_zero():
        p = IntPolynomial([draw(st.integers(1, 6))])
    return p


def test_zero_polynomial_degree_is_minus_infinity():
    z = IntPolynomial()
    assert z.coeffs == () and z.degree == float("-inf")
    assert (z + 3).degree == 0
    assert IntPolynomial([0, 0]) == z


def test_polynomial_json_round_trip():
    p = P(10 ** 30, -1, 0, 7)
    data = p.to_json()
    assert data == {"coeffs": [str(10 ** 30), "-1", "0", "7"]}
    assert IntPolynomial.from_json(data) == p


def test_charpoly_examples():
    assert charpoly(IntMatrix.from_rows([[3]])) == X - 3
    assert charpoly(IntMatrix.identity(2)) == (X - 1) ** 2
    assert charpoly(IntMatrix.from_rows([[0, 1], [1, 0]])) == X ** 2 - 1


def test_charpoly_rejects_non_square():
    with pytest.raises(DimensionError):
        charpoly([[1, 2, 3], [4, 5, 6]])


def _matrix_poly_eval(f: IntPolynomial, m):
    n = len(m)
    A = IntMatrix.from_rows(m)
    acc = IntMatrix(n, n, [0] * (n * n))
    for c in reversed(f.coeffs):
        acc = (acc @ A) + IntMatrix.identity(n).scale(c)
    return acc


@given(square_matrices(2, 6))
def test_cayley_hamilton(m):
    f = charpoly(m)
    assert f.is_monic() and f.degree == len(m)
    assert all(x == 0 for x in _matrix_poly_eval(f, m).entries)


def test_charpoly_rational_matches_integer_case():
    m = [[1, 2], [3, 4]]
    assert charpoly_rational([[Fraction(x) for x in r] for r in m]) == charpoly(m)
    half = [[Fraction(1, 2), Fraction(3, 2)], [Fraction(1, 2), Fraction(-1, 2)]]
    assert charpoly_rational(half) == X ** 2 - 1


def test_bass_determinant_examples():
    assert bass_determinant(X - 3, 2) == P(1, -3, 2)
    assert bass_determinant((X - 1) ** 2, 2) == P(1, -1, 2) ** 2
    # frozen from the fraction-free determinant of I - A S + 3 S^2 I with A = [[0,1],[1,0]]
    assert bass_determinant(X ** 2 - 1, 3) == P(1, 0, 5, 0, 9)


def test_bass_determinant_oracle_for_swap_matrix():
    A = [[0, 1], [1, 0]]
    entries = [[P(1 if i == j else 0, -A[i][j], 3 if i == j else 0) for j in range(2)] for i in range(2)]
    assert polynomial_matrix_det(entries) == P(1, 0, 5, 0, 9)


def test_bass_determinant_contract():
    with pytest.raises(ContractError):
        bass_determinant(P(1, 2), 2)
    assert bass_determinant(ONE, 5) == ONE


@given(square_matrices(1, 5), st.sampled_from([2, 3, 5, 7]))
def test_bass_determinant_matches_polynomial_matrix_determinant(m, p):
    n = len(m)
    entries = [[P(1 if i == j else 0, -m[i][j], p if i == j else 0) for j in range(n)] for i in range(n)]
    d = bass_determinant(charpoly(m), p)
    assert d == polynomial_matrix_det(entries)
    assert d[0] == 1 and d.degree == 2 * n


def test_rational_function_examples():
    one_minus_s = RationalFunction(P(1, -1))
    assert rf_mul(RationalFunction(1, P(1, -1)), one_minus_s) == RationalFunction(1)
    assert rf_div(RationalFunction(P(1, 0, -1)), one_minus_s) == RationalFunction(P(1, 1))
    w = RationalFunction(1, P(1, -1) * P(1, -2))
    assert rf_eq(w, RationalFunction(1, P(1, -3, 2)))


def test_rational_function_canonical_form():
    r = RationalFunction(P(2, 2), P(-4, -4))
    assert r.num == P(-1) and r.den == P(2)
    r = RationalFunction(P(0, 3), P(-6))
    assert r.den.leading > 0
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, 0)
    with pytest.raises(ZeroDivisionError):
        rf_div(RationalFunction(1), RationalFunction(0))
    assert RationalFunction.from_json(r.to_json()) == r


@given(polys(), polys(nonzero=True), polys(nonzero=True), polys(nonzero=True))
def test_rf_mul_div_round_trip(a_num, a_den, b_num, b_den):
    a = RationalFunction(a_num, a_den)
    b = RationalFunction(b_num, b_den)
    assert rf_eq(rf_div(rf_mul(a, b), b), a)
    assert (a * b) / b == a


def test_poly_exact_div_examples():
    assert poly_exact_div(X ** 2 - 1, X - 1) == X + 1
    assert poly_exact_div(X - 3, X - 3) == ONE
    base = P(1, -1) * P(1, -2)
    assert poly_exact_div(base ** 2 * P(1, 2, 2), base ** 2) == P(1, 2, 2)
    with pytest.raises(DivisibilityError):
        poly_exact_div(X ** 2 + 1, X - 1)
    with pytest.raises(DivisibilityError):
        poly_exact_div(X, 2 * X + 1)


@given(polys(), polys(nonzero=True))
def test_poly_exact_div_inverts_multiplication(a, b):
    assert poly_exact_div(a * b, b) == a


def test_gcd_and_sturm():
    g = poly_gcd((X - 1) * (X + 2), (X - 1) * (X - 5))
    assert g in (X - 1, 1 - X)
    f = (X - 1) * (X + 2) * (X - 3)
    assert sturm_count(f, Fraction(-10), Fraction(10)) == 3
    assert sturm_count(f, Fraction(0), Fraction(2)) == 1


def test_roots_within():
    assert roots_within(X * (X + 2), 8)
    assert not roots_within(X - 3, 8)
    assert not roots_within(X ** 2 + 1, 8)
    assert roots_within(X ** 2 - 8, 8)
