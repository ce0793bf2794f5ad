from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from m2rank.identities import build_catalog, verify
from m2rank.lambert import MARGIN, ZeroDenominator, g_of, s2, sigma_0b, sigma_ab
from m2rank.products import poch_inf, theta_sum
from m2rank.series import QSeries, equal_to_order, mul

N = 200


def assert_same(a: QSeries, b: QSeries, order: int = N - 1):
    ok, mm = equal_to_order(a, b, order)
    assert ok, mm


def test_sigma_ab_leading_term():
    s = sigma_ab(1, 0, 3, 20)
    assert s.coeff(0) == 1


def test_sigma_ab_vanishing_denominator():
    with pytest.raises(ZeroDenominator):
        sigma_ab(3, 0, 3, 20)


def test_sigma_0b_has_no_constant_term():
    for b, ell in [(-1, 3), (0, 3), (1, 5), (-2, 5)]:
        assert sigma_0b(b, ell, 40).coeff(0) == 0


def test_s2_has_no_constant_term():
    for b in (1, 3):
        for ell in (3, 5):
            assert s2(b, ell, 40).coeff(0) == 0


@pytest.mark.parametrize("ell", [3, 5])
@pytest.mark.parametrize("b", [1, 3, 5, 7, 9, 11])
def test_reflection(b, ell):
    assert_same(s2(b, ell, N), -s2(2 * ell - b, ell, N))


@pytest.mark.parametrize("ell", [3, 5])
@pytest.mark.parametrize("b", [1, 3, 5, 7])
def test_odd_difference_is_theta(b, ell):
    lhs = s2(b, ell, N) - s2(2 * ell + b, ell, N)
    assert_same(lhs, theta_sum(-1, b, 2, N) - QSeries.one(N))


@pytest.mark.parametrize("ell", [3, 5])
def test_odd_difference_product_form(ell):
    rhs = mul(mul(poch_inf(1, 3, 4, N), poch_inf(1, 1, 4, N)), poch_inf(1, 4, 4, N))
    assert_same(s2(1, ell, N) - s2(2 * ell + 1, ell, N), rhs - QSeries.one(N))


params = st.tuples(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=-12, max_value=12),
    st.integers(min_value=-6, max_value=6),
)


@settings(max_examples=40, deadline=None)
@given(params)
def test_window_independence(p):
    ell, a, b = p
    n = 120
    base = {
        "s2": s2(b, ell, n),
        "sigma0": sigma_0b(b, ell, n),
    }
    if a % ell:
        base["sigma"] = sigma_ab(a, b, ell, n)
    for extra in (1, 3, 5):
        m = MARGIN + extra
        assert s2(b, ell, n, margin=m) == base["s2"]
        assert sigma_0b(b, ell, n, margin=m) == base["sigma0"]
        if a % ell:
            assert sigma_ab(a, b, ell, n, margin=m) == base["sigma"]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(min_value=-20, max_value=20))
def test_window_independence_wide_shift(ell, a):
    assume(a % ell)
    n = 150
    ref = sigma_ab(a, a, ell, n, margin=MARGIN + 5)
    assert sigma_ab(a, a, ell, n) == ref


def test_g_pairs_cancel():
    n = 150
    assert_same(g_of(1, 3, n) + g_of(2, 3, n), QSeries.zero(n), n - 1)
    assert_same(g_of(1, 5, n) + g_of(4, 5, n), QSeries.zero(n), n - 1)
    assert_same(g_of(2, 5, n) + g_of(3, 5, n), QSeries.zero(n), n - 1)


def test_g_undefined_on_multiples_of_ell():
    with pytest.raises(ZeroDenominator):
        g_of(3, 3, 10)


def test_g_product_relation():
    catalog = build_catalog()
    for key in ("G1@(3,1)", "G1@(5,1)", "G1@(5,2)"):
        report = verify(catalog[key], 150)
        assert report.passed, report
