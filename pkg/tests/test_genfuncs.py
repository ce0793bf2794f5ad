from __future__ import annotations

import pytest

from m2rank import genfuncs
from m2rank.lambert import ZeroDenominator, s2
from m2rank.partitions import rank_series, residue_series
from m2rank.series import QSeries, dissect, equal_to_order, shift, substitute_power

N = 120


def assert_same(a: QSeries, b: QSeries, order: int):
    ok, mm = equal_to_order(a, b, order)
    assert ok, mm


def test_closed_forms_omit_the_empty_partition():
    assert genfuncs.rank_m_gf(0, 10).coeff(0) == 0
    assert genfuncs.rank_m_gf(0, 10, include_empty=True).coeff(0) == 1
    assert genfuncs.rank_m_gf(2, 10, include_empty=True).coeff(0) == 0
    assert genfuncs.rank_gf(0, 3, 10).coeff(0) == 0
    assert genfuncs.rank_gf(0, 3, 10, include_empty=True).coeff(0) == 1
    assert genfuncs.rank_bivariate(5).coeff(0).as_dict() == {0: 1}


def test_closed_forms_match_enumeration_small():
    for m in (-2, 0, 3):
        assert_same(genfuncs.rank_m_gf(m, 21, include_empty=True), rank_series(m, 20), 20)
    for s in range(5):
        assert_same(genfuncs.rank_gf(s, 5, 21), residue_series(s, 5, 20, include_empty=False), 20)


def test_residue_classes_sum_to_all_partitions():
    total = sum((genfuncs.rank_gf(s, 5, N) for s in range(5)), QSeries.zero(N))
    expected = genfuncs.distinct_odd_gf(N) - QSeries.one(N)
    assert_same(total, expected, N - 1)


def test_rank_gf_rejects_bad_residue():
    with pytest.raises(ValueError):
        genfuncs.rank_gf(3, 3, 10)


@pytest.mark.parametrize("ell", [3, 5])
def test_multiplier_dissection(ell):
    parts = genfuncs.multiplier_dissection(ell, N)
    full = genfuncs.multiplier(N)
    total = sum(parts.values(), QSeries.zero(N))
    assert_same(total, full, N - 1)
    for d, part in parts.items():
        piece = shift(substitute_power(dissect(full, ell, d), ell), d)
        assert_same(part, piece, N - 1 - ell)


@pytest.mark.parametrize("ell,m", [(3, 2), (5, 1), (5, 2)])
def test_bracket_closed_form(ell, m):
    assert_same(genfuncs.bracket_raw(ell, m, N), genfuncs.bracket_closed(ell, m, N), N - 1)


@pytest.mark.parametrize("ell,m", [(3, 2), (5, 1), (5, 2)])
def test_assembly_gives_s2(ell, m):
    b = 3 * ell - 4 * m
    assert_same(genfuncs.assemble_final(ell, m, N), s2(b, ell, N), N - 1)
    assert_same(genfuncs.assemble_final(ell, m, N, closed_bracket=False), s2(b, ell, N), N - 1)


def test_assembly_rejects_multiples_of_ell():
    with pytest.raises(ZeroDenominator):
        genfuncs.assemble_final(5, 5, 20)


def test_double_primed_range():
    assert genfuncs.double_primed_range(3, 2) == []
    assert genfuncs.double_primed_range(5, 1) == [2]
    assert genfuncs.double_primed_range(5, 2) == [1]
