import math

import pytest

from hodgehurwitz.exact_algebra import (
    LaurentSeries,
    UniPoly,
    double_factorial,
    laurent_reciprocal,
    laurent_substitute,
    rat,
)
from hodgehurwitz.lambert_curve import (
    CurveSeries,
    EtaFamily,
    XiHatTower,
    d_dt,
    eta_series,
    eta_xi_identity_check,
    h02_series_identity_check,
    poly_as_recip_series,
    s_involution,
    stirling_coefficients,
    v_series,
    w_series,
    xi_form,
    xi_hat,
    xi_hat_over_t,
    xi_in_x_check,
)

ORDER = 30


# --- xi_hat tower ------------------------------------------------------------


def test_xi_hat_first_members():
    assert xi_hat(0) == UniPoly({1: 1, 0: -1})
    assert xi_hat(1) == UniPoly({3: 1, 2: -1})
    assert xi_hat(2) == UniPoly({5: 3, 4: -5, 3: 2})


def test_xi_hat_degree_leading_and_root():
    for n in range(13):
        p = xi_hat(n)
        assert p.degree() == 2 * n + 1
        expected_leading = 1 if n == 0 else double_factorial(2 * n - 1)
        assert p.leading_coefficient() == expected_leading
        assert p(1) == 0


def test_xi_hat_laurent_members():
    m1 = xi_hat(-1)
    assert isinstance(m1, LaurentSeries)
    assert m1.coeffs == {0: rat(1), 1: rat(-1)}  # 1 - 1/t
    m2 = xi_hat(-2)
    assert m2.coeffs == {2: rat(-1, 2)}  # -1/(2 t^2), additive const dropped
    with pytest.raises(ValueError):
        xi_hat(-3)


def test_xi_form_values_and_structure():
    assert xi_form(0) == UniPoly({0: 1})
    assert xi_form(1) == UniPoly({2: 3, 1: -2})
    for n in range(11):
        f = xi_form(n)
        assert f == xi_hat(n).derivative()
        assert f.degree() == 2 * n
        assert f.leading_coefficient() == double_factorial(2 * n + 1)
        # lowest term (-1)^n (n+1)! t^n
        assert f.valuation() == n
        assert f.coefficient(n) == (-1) ** n * math.factorial(n + 1)


def test_xi_hat_over_t_is_exact_polynomial():
    for n in range(8):
        q = xi_hat_over_t(n)
        assert q * UniPoly({1: 1}) == xi_hat(n + 1)


def test_tower_instances_are_independent():
    tower = XiHatTower()
    assert tower.xi_hat(3) == xi_hat(3)
    assert tower.xi_form(3) == xi_form(3)


# --- curve series ------------------------------------------------------------


def test_w_series_coefficients():
    w = w_series(12)
    assert w.coefficient(2) == rat(1, 2)
    assert w.coefficient(1) == 0
    assert w.coefficient(5) == rat(1, 5)
    assert w.min_degree == 2 and w.truncation_order == 12


def test_s_involution_printed_coefficients():
    s = s_involution(ORDER)
    assert s.coefficient(-1) == -1
    assert s.coefficient(0) == rat(2, 3)
    assert s.coefficient(1) == 0
    assert s.coefficient(2) == rat(4, 135)
    assert s.coefficient(3) == rat(8, 405)
    assert s.coefficient(4) == rat(8, 567)


def test_s_involution_fixes_w():
    s = s_involution(ORDER)
    w = w_series(ORDER)
    diff = laurent_substitute(w, laurent_reciprocal(s)) - w
    assert diff.is_zero()
    assert diff.truncation_order >= ORDER - 4


def test_s_involution_is_an_involution():
    s = s_involution(ORDER)
    # s(s(t)): substitute 1/s(t) for the formal variable of s
    ss = laurent_substitute(s, laurent_reciprocal(s))
    t = LaurentSeries.exact({-1: 1}, "1/t")
    diff = ss - t
    assert diff.is_zero()
    assert diff.truncation_order >= ORDER - 6


def test_v_series_printed_coefficients():
    v = v_series(ORDER)
    assert v.coefficient(1) == 1
    assert v.coefficient(2) == rat(1, 3)
    assert v.coefficient(3) == rat(7, 36)
    assert v.coefficient(4) == rat(73, 540)
    assert v.coefficient(5) == rat(1331, 12960)


def test_v_squared_is_twice_w():
    v = v_series(ORDER)
    w = w_series(ORDER)
    diff = (v * v).scale(rat(1, 2)) - w
    assert diff.is_zero()
    assert diff.truncation_order >= ORDER - 2


def test_v_is_odd_under_the_involution():
    v = v_series(ORDER)
    s = s_involution(ORDER)
    v_of_s = laurent_substitute(v, laurent_reciprocal(s))
    total = v_of_s + v
    assert total.is_zero()
    assert total.truncation_order >= ORDER - 6


def test_curve_series_bundle():
    curve = CurveSeries.build(20, k_max=8)
    assert curve.order == 20
    assert curve.s_of_t.coefficient(2) == rat(4, 135)
    assert curve.v_of_t.coefficient(1) == 1
    assert curve.sk[0] == 1


# --- Stirling coefficients and eta -------------------------------------------


def test_stirling_coefficients_values():
    sk = stirling_coefficients(4)
    assert sk == [rat(1), rat(-1, 12), rat(1, 288), rat(139, 51840),
                  rat(-571, 2488320)]


def test_eta_minus_one_expansion():
    e = eta_series(-1, 9)
    assert e.coefficient(1) == -1
    assert e.coefficient(3) == rat(-1, 36)
    # general term -v^{2k+1} (-1)^k s_k / (2k+1)!!
    sk = stirling_coefficients(4)
    for k in range(4):
        expected = -((-1) ** k) * sk[k] / double_factorial(2 * k + 1)
        assert e.coefficient(2 * k + 1) == expected


def test_eta_is_odd():
    for n in range(-2, 6):
        e = eta_series(n, 15)
        assert all(d % 2 == 1 for d in e.coeffs)
        assert e.min_degree == -(2 * n + 1)


def test_eta_recursion():
    order = 21
    for n in range(-2, 11):
        e_n = eta_series(n, order)
        e_next = eta_series(n + 1, order)
        derived = e_n.derivative().shift(-1).scale(-1)  # -(1/v) d/dv
        diff = e_next - derived
        assert diff.is_zero()
        assert diff.truncation_order >= order - 2


def test_eta_family_cache():
    fam = EtaFamily(11)
    assert fam.eta(0) == fam.eta(0)
    assert fam.eta(0) == eta_series(0, 11)


def test_eta_matches_xi_hat_under_the_involution():
    for n in range(-1, 9):
        assert eta_xi_identity_check(n, ORDER)


def test_eta_xi_check_rejects_tiny_order():
    with pytest.raises(ValueError):
        eta_xi_identity_check(8, 10)


# --- global-coordinate and two-point identities -------------------------------


def test_xi_hat_on_global_coordinate_series():
    for n in range(-1, 7):
        assert xi_in_x_check(n, 12)


def test_h02_identity_small_and_degree8():
    assert h02_series_identity_check(2)
    assert h02_series_identity_check(8)


# --- helpers ------------------------------------------------------------------


def test_d_dt_on_polynomials_matches_poly_derivative():
    p = xi_hat(3)
    series = poly_as_recip_series(p)
    assert d_dt(series) == poly_as_recip_series(p.derivative())


def test_d_dt_on_w_gives_kernel_denominator():
    # w'(t) = -1/(t^2 (t-1)): check via (t^3 - t^2) w' = -1
    w = w_series(25)
    dw = d_dt(w)
    t3_t2 = poly_as_recip_series(UniPoly({3: 1, 2: -1}))
    prod = t3_t2 * dw
    minus_one = LaurentSeries.exact({0: -1}, "1/t")
    diff = prod - minus_one
    assert diff.is_zero()
