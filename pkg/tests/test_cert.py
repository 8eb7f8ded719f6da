import json
import random
from fractions import Fraction

import pytest
import sympy

from barysub.exact.cert import (
    SCALE,
    IntervalId,
    R_exact,
    build_growth_matrix,
    certify_F_monotone,
    certify_F_positive,
    derivative_bound,
    expand_R_polynomial,
    growth_product,
)
from barysub.exact.poly import RationalPolynomial, product
from barysub.exact.sturm import sturm_count_roots
from barysub.export import dumps_json
from barysub.flat import product_R

from reference_matrices import HIGH, HIGH_FACTORED, HIGH_REDUCED, LOW, MID

REFERENCE = {IntervalId.HIGH: HIGH, IntervalId.MID: MID, IntervalId.LOW: LOW}


def lin(c):
    return RationalPolynomial.linear(*c)


@pytest.fixture(scope="module")
def positive():
    return certify_F_positive()


@pytest.fixture(scope="module")
def monotone():
    return certify_F_monotone()


def test_interval_pieces():
    assert [iv.name for iv in IntervalId] == ["LOW", "MID", "HIGH"]
    assert IntervalId.LOW.hi == IntervalId.MID.lo == Fraction(1, 5)
    assert IntervalId.MID.hi == IntervalId.HIGH.lo == Fraction(2, 7)
    assert IntervalId.containing(Fraction(1, 5)) is IntervalId.MID
    assert IntervalId.containing(Fraction(1, 2)) is IntervalId.HIGH


def test_matrix_examples():
    assert build_growth_matrix(IntervalId.HIGH)[0][0] == lin((4, 10))
    assert build_growth_matrix(IntervalId.HIGH)[5][5] == lin((9, 0))
    assert build_growth_matrix(IntervalId.LOW)[0][2] == lin((8, -4))


@pytest.mark.parametrize("iv", list(IntervalId), ids=lambda iv: iv.name)
def test_matrix_matches_reference(iv):
    got = build_growth_matrix(iv)
    for i in range(6):
        for j in range(6):
            assert got[i][j] == lin(REFERENCE[iv][i][j]), (iv.name, i + 1, j + 1)


@pytest.mark.parametrize("iv", list(IntervalId), ids=lambda iv: iv.name)
def test_matrix_entries_are_scaled_growth_products(iv):
    # independent float oracle: 6 G(i, z_j(x)) G(j, x) at interior points
    from barysub.flat import growth_G, z_map

    A = build_growth_matrix(iv)
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        x = iv.lo + t * (iv.hi - iv.lo)
        for i in range(1, 7):
            for j in range(1, 7):
                ref = 6 * growth_G(i, z_map(j, float(x))) * growth_G(j, float(x))
                assert float(A[i - 1][j - 1](x)) == pytest.approx(ref, rel=1e-13)


def test_scale_identity_on_high():
    a = growth_product(IntervalId.HIGH) * SCALE
    b = product(lin(c) for row in HIGH_REDUCED for c in row) * Fraction(2**29 * 3**17, 6**36)
    assert a == b


def test_factored_form_on_high():
    f = product(lin(c) ** k for c, k in HIGH_FACTORED) * Fraction(1, 2**7 * 3**19) - 1
    assert f == expand_R_polynomial(IntervalId.HIGH)


@pytest.mark.parametrize("iv", list(IntervalId), ids=lambda iv: iv.name)
def test_degree_is_34(iv):
    # two constant entries (9 and 9) per matrix: 36 - 2
    assert expand_R_polynomial(iv).degree == 34
    assert sum(e.degree == 0 for row in build_growth_matrix(iv) for e in row) == 2


def test_expanded_polynomial_matches_sympy():
    x = sympy.Symbol("x")
    expr = sympy.prod(c0 + c1 * x for row in LOW for c0, c1 in row) / sympy.Integer(6) ** 36 - 1
    ref = sympy.Poly(sympy.expand(expr), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(ref.all_coeffs())]
    assert expand_R_polynomial(IntervalId.LOW) == RationalPolynomial(coeffs)


def test_endpoint_values():
    assert float(expand_R_polynomial(IntervalId.HIGH)(Fraction(1, 2))) == pytest.approx(11.989284, rel=1e-7)
    assert float(expand_R_polynomial(IntervalId.LOW)(Fraction(0))) == pytest.approx(13495.561, rel=1e-7)
    assert float(R_exact(Fraction(2, 7))) == pytest.approx(99.311045, rel=1e-7)
    assert float(R_exact(Fraction(1, 5))) == pytest.approx(418.66239, rel=1e-7)


def test_shared_endpoints_agree_exactly():
    high, mid, low = (expand_R_polynomial(iv) for iv in (IntervalId.HIGH, IntervalId.MID, IntervalId.LOW))
    assert high(Fraction(2, 7)) == mid(Fraction(2, 7))
    assert mid(Fraction(1, 5)) == low(Fraction(1, 5))


def test_no_roots_on_high_piece():
    assert sturm_count_roots(expand_R_polynomial(IntervalId.HIGH), Fraction(2, 7), Fraction(1, 2)) == 0


def test_positive_report(positive):
    assert positive.verdict
    for r in positive.intervals:
        assert r.root_count == 0 and r.degree == 34
        assert all(v > 0 for v in r.endpoint_values.values()) and r.interior_value > 0


@pytest.mark.parametrize(
    "iv,side,value",
    [
        (IntervalId.HIGH, "left", 0.0006183),
        (IntervalId.HIGH, "right", 0.6297289),
        (IntervalId.MID, "right", 0.4569663),
        (IntervalId.LOW, "right", 0.3995404),
    ],
)
def test_nearest_external_roots(positive, iv, side, value):
    br = positive.interval(iv).nearest_external_roots[side]
    assert br.hi - br.lo <= Fraction(1, 10**7)
    assert br.approx == pytest.approx(value, abs=1e-5)


def test_external_roots_are_roots(positive):
    p = expand_R_polynomial(IntervalId.MID)
    br = positive.interval(IntervalId.MID).nearest_external_roots["right"]
    assert p(br.lo) * p(br.hi) <= 0


def test_monotone_report(monotone):
    assert monotone.verdict
    assert all(r.root_count == 0 and r.interior_value < 0 for r in monotone.intervals)
    assert all(monotone.checks.values())
    assert set(monotone.checks) >= {"R(0)>R(1/5)", "R(1/5)>R(2/7)", "R(2/7)>R(1/2)", "R(1/2)>1"}


def test_exact_orderings():
    assert R_exact(0) > R_exact(Fraction(1, 5)) > R_exact(Fraction(2, 7)) > R_exact(Fraction(1, 2)) > 1


def test_derivative_bound():
    val, iv, i, j, x = derivative_bound()
    assert val == Fraction(14, 3)
    assert (iv, i, j, x) == (IntervalId.MID, 3, 2, Fraction(2, 7))


@pytest.mark.parametrize("iv", list(IntervalId), ids=lambda iv: iv.name)
def test_exact_matches_float_product(iv):
    rng = random.Random(list(IntervalId).index(iv) + 7)
    p = expand_R_polynomial(iv)
    for _ in range(10):
        x = iv.lo + Fraction(rng.randint(0, 10**6), 10**6) * (iv.hi - iv.lo)
        assert float(p(x)) == pytest.approx(product_R(float(x)) - 1, rel=1e-9)


def test_report_json(positive):
    doc = json.loads(dumps_json(positive.to_json()))
    assert doc["verdict"] is True
    high = next(r for r in doc["intervals"] if r["interval"] == "HIGH")
    assert high["degree"] == 34 and high["root_count"] == 0
    num, den = high["endpoint_values"]["hi"].split("/")
    assert Fraction(int(num), int(den)) == expand_R_polynomial(IntervalId.HIGH)(Fraction(1, 2))
    assert high["nearest_external_roots"]["left"]["approx"] == pytest.approx(0.0006183, abs=1e-5)
