from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m2rank.series import (
    BiSeries,
    InsufficientPrecision,
    LaurentPoly,
    NegativeSupport,
    NotAUnit,
    NotExactlyDivisible,
    OutOfRange,
    QSeries,
    ZeroSeries,
    bi_add,
    bi_coeff_z,
    bi_invert_unit,
    bi_mul,
    bi_scale,
    dissect,
    divide,
    equal_to_order,
    from_json,
    invert_unit,
    mul,
    negate,
    power,
    scale,
    shift,
    substitute_power,
    to_json,
)


def S(coeffs, min_exp=0, prec=None):
    return QSeries.from_list(coeffs, min_exp, prec)


def same(a: QSeries, b: QSeries) -> bool:
    order = min(a.prec, b.prec) - 1
    return equal_to_order(a, b, order)[0]


# -- examples -------------------------------------------------------------------


def test_add_cancels_and_keeps_precision():
    out = S([1, -1], prec=10) + S([0, 1], prec=10)
    assert out.prec == 10
    assert out.terms() == [(0, 1)]


def test_add_zero_is_identity():
    a = S([3, 0, -2, 5], prec=8)
    assert same(a + QSeries.zero(8), a)


def test_add_laurent_support():
    out = QSeries.monomial(1, -1, 10) + QSeries.monomial(1, 1, 10)
    assert out.min_exp == -1
    assert out.terms() == [(-1, 1), (1, 1)]


def test_mul_telescopes():
    n = 12
    out = mul(S([1, -1], prec=n), S([1] * n))
    assert out.prec == n
    assert out.terms() == [(0, 1)]


def test_mul_by_one_and_difference_of_squares():
    a = S([2, 0, 7, -1], prec=6)
    assert same(mul(a, QSeries.one(6)), a)
    assert mul(S([1, -1], prec=9), S([1, 1], prec=9)).terms() == [(0, 1), (2, -1)]


def test_mul_precision_rule():
    a = QSeries.from_list([1, 2], min_exp=-2, prec=5)
    b = QSeries.from_list([1], min_exp=1, prec=7)
    out = mul(a, b)
    assert out.min_exp == -1
    assert out.prec == min(5 + 1, 7 - 2)


def test_invert_geometric():
    inv = invert_unit(S([1, -1], prec=10))
    assert inv.terms() == [(e, 1) for e in range(10)]


def test_invert_shifted_unit():
    inv = invert_unit(shift(S([1, -1], prec=10), 2))
    assert inv.min_exp == -2
    assert inv.terms() == [(e, 1) for e in range(-2, inv.prec)]


def test_invert_rejects_non_units():
    with pytest.raises(NotAUnit):
        invert_unit(S([2, 1], prec=5))
    with pytest.raises(ZeroSeries):
        invert_unit(QSeries.zero(5))


def test_exact_division_by_non_unit_leading_coefficient():
    num = mul(S([2, 1], prec=12), S([1, 3, 1], prec=12))
    assert same(divide(num, S([2, 1], prec=12)), S([1, 3, 1], prec=12 - 0))
    with pytest.raises(NotExactlyDivisible):
        divide(S([1], prec=6), S([2, 1], prec=6))


def test_shift_scale_negate():
    assert shift(QSeries.one(5), 3).terms() == [(3, 1)]
    assert scale(S([0, 1], prec=5), -3).terms() == [(1, -3)]
    a = S([1, -4, 0, 9], prec=6)
    assert negate(negate(a)) == a


def test_substitute_power():
    assert substitute_power(S([1, 1], prec=4), 3).terms() == [(0, 1), (3, 1)]
    a = S([5, 1, 2], prec=3)
    assert substitute_power(a, 1) == a
    out = substitute_power(QSeries.monomial(1, -1, 3), 2)
    assert out.terms() == [(-2, 1)]
    assert out.prec == 6


def test_dissect_examples():
    out = dissect(S([1, 1, 1, 1]), 2, 0)
    assert out.terms() == [(0, 1), (1, 1)]
    assert out.prec == (4 - 0 - 1) // 2 + 1
    f = S([3, 1, 4, 1, 5], prec=5)
    assert dissect(f, 1, 0) == f
    with pytest.raises(NegativeSupport):
        dissect(QSeries.monomial(1, -1, 5), 2, 1)


def test_coeff():
    assert S([1, -1], prec=5).coeff(1) == -1
    assert QSeries.monomial(1, -1, 3).coeff(-1) == 1
    assert QSeries.one(10).coeff(5) == 0
    with pytest.raises(OutOfRange):
        QSeries.one(10).coeff(10)


def test_power():
    assert power(S([1, 1], prec=6), 3).terms() == [(0, 1), (1, 3), (2, 3), (3, 1)]
    assert power(S([0, 1], prec=6), 0).terms() == [(0, 1)]


def test_equal_to_order():
    a = S([1, 2, 3], prec=10)
    assert equal_to_order(a, a, 9) == (True, None)
    ok, _ = equal_to_order(QSeries.one(10), QSeries.one(10) + QSeries.monomial(1, 6, 10), 5)
    assert ok
    ok, mm = equal_to_order(QSeries.one(5), S([1, 1], prec=5), 1)
    assert not ok
    assert (mm.exponent, mm.left, mm.right) == (1, 0, 1)
    with pytest.raises(InsufficientPrecision):
        equal_to_order(QSeries.one(3), QSeries.one(10), 3)


def test_json_roundtrip_uses_decimal_strings():
    a = QSeries.from_list([10**30, -1, 0, 7], min_exp=-1, prec=3)
    obj = to_json(a)
    assert obj["variable"] == "q"
    assert obj["coeffs"][0] == str(10**30)
    assert from_json(json.loads(json.dumps(obj))) == a


def test_big_integers_stay_exact():
    a = S([10**40, 1], prec=4)
    assert mul(a, a).coeff(0) == 10**80


# -- bivariate ------------------------------------------------------------------


def test_bi_invert_geometric():
    prec = 12
    a = BiSeries.from_terms({(0, 0): 1, (2, 1): -1}, prec)
    inv = bi_invert_unit(a)
    for e in range(prec):
        expected = LaurentPoly.from_dict({e // 2: 1}) if e % 2 == 0 else LaurentPoly()
        assert inv.coeff(e) == expected


def test_bi_coeff_z():
    a = BiSeries.from_terms({(1, 1): 1, (1, -1): 1}, 5)
    assert bi_coeff_z(a, 1).terms() == [(1, 1)]


def test_bi_coeff_z_commutes_with_add_and_scale():
    a = BiSeries.from_terms({(0, 0): 1, (1, 2): 3, (2, -1): -4}, 6)
    b = BiSeries.from_terms({(1, 2): 5, (3, 0): 1}, 6)
    for m in (-1, 0, 2):
        assert same(bi_coeff_z(bi_add(a, b), m), bi_coeff_z(a, m) + bi_coeff_z(b, m))
        assert same(bi_coeff_z(bi_scale(a, -7), m), scale(bi_coeff_z(a, m), -7))


def test_bi_mul_matches_polynomial_product():
    a = BiSeries.from_terms({(0, 0): 1, (1, 1): 1}, 6)
    b = BiSeries.from_terms({(0, 0): 1, (1, -1): 1}, 6)
    out = bi_mul(a, b)
    assert out.coeff(1).as_dict() == {1: 1, -1: 1}
    assert out.coeff(2).as_dict() == {0: 1}


# -- properties -----------------------------------------------------------------

PREC = 64
ints = st.integers(min_value=-50, max_value=50)


@st.composite
def series(draw, min_lo=-3, max_lo=3):
    lo = draw(st.integers(min_value=min_lo, max_value=max_lo))
    cs = draw(st.lists(ints, min_size=PREC - lo, max_size=PREC - lo))
    return QSeries.from_list(cs, lo, PREC)


@st.composite
def units(draw):
    lead = draw(st.sampled_from([1, -1]))
    v = draw(st.integers(min_value=-2, max_value=3))
    rest = draw(st.lists(ints, min_size=PREC - 1, max_size=PREC - 1))
    return QSeries.from_list([lead] + rest, v, PREC + v)


@settings(max_examples=100, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert same(a + b, b + a)
    assert same((a + b) + c, a + (b + c))
    assert same(mul(a, b), mul(b, a))
    assert same(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert same(mul(a, b + c), mul(a, b) + mul(a, c))
    assert same(a - a, QSeries.zero(PREC))


@settings(max_examples=100, deadline=None)
@given(units())
def test_unit_inverse(a):
    prod = mul(a, invert_unit(a))
    assert prod.prec > 0
    assert same(prod, QSeries.one(prod.prec))


@settings(max_examples=100, deadline=None)
@given(series(min_lo=0, max_lo=0), st.sampled_from([2, 3, 5, 7]))
def test_dissection_roundtrip(f, ell):
    total = None
    for d in range(ell):
        part = shift(substitute_power(dissect(f, ell, d), ell), d)
        total = part if total is None else total + part
    assert total.prec >= f.prec - ell
    assert same(total, f)
    assert substitute_power(dissect(f, 1, 0), 1) == f
