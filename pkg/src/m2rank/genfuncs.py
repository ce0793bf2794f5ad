"""Analytic generating functions for the M2-rank and the pieces of the
Atkin--Swinnerton-Dyer style assembly (multiplier, its dissections, and the
closed form for S2(3l - 4m)).

Convention: the closed forms for N2(m, n) and N2(s, l, n) have constant term
0, so by default these functions count partitions of positive integers only.
Pass ``include_empty=True`` to add the empty partition (rank 0).
"""

from __future__ import annotations

from .lambert import ZeroDenominator, at_least, g_of, lambert_sum, s2, sigma_ab, sigma_weight
from .products import big_p, p_zero, poch_inf
from .series import BiSeries, QSeries, bi_add, bi_mul, dissect, divide, mul, scale, shift


def multiplier(prec: int) -> QSeries:
    """(q^2; q^2)_inf / (-q; q^2)_inf."""
    return divide(poch_inf(1, 2, 2, prec), poch_inf(-1, 1, 2, prec))


def distinct_odd_gf(prec: int) -> QSeries:
    """(-q; q^2)_inf / (q^2; q^2)_inf, counting partitions without repeated odd parts."""
    return divide(poch_inf(-1, 1, 2, prec), poch_inf(1, 2, 2, prec))


def rank_m_gf(m: int, prec: int, include_empty: bool = False) -> QSeries:
    """sum_n N2(m, n) q^n from the single-rank closed form."""
    terms: dict[int, int] = {}
    n = 1
    while 2 * n * n - n + 2 * abs(m) * n < prec:
        e = 2 * n * n - n + 2 * abs(m) * n
        sgn = 1 if n % 2 else -1
        terms[e] = terms.get(e, 0) + sgn
        terms[e + 2 * n] = terms.get(e + 2 * n, 0) - sgn
        n += 1
    out = mul(distinct_odd_gf(prec), QSeries.from_dict(terms, prec))
    if include_empty and m == 0:
        out = out + QSeries.one(prec)
    return out


def rank_gf(s: int, ell: int, prec: int, include_empty: bool = False) -> QSeries:
    """sum_n N2(s, ell, n) q^n from the residue-class Lambert form (n = 0 omitted)."""
    if not 0 <= s < ell:
        raise ValueError(f"residue s={s} outside [0, {ell})")
    den = lambda n: 2 * ell * n  # noqa: E731
    lam = lambert_sum(lambda n: 2 * n * n + n + 2 * s * n, den, prec, omit_zero=True)
    lam = lam + lambert_sum(lambda n: 2 * n * n + n + 2 * (ell - s) * n, den, prec, omit_zero=True)
    out = mul(distinct_odd_gf(prec), lam)
    if include_empty and s == 0:
        out = out + QSeries.one(prec)
    return out


def analytic_rank_diff(s: int, t: int, ell: int, d: int, prec: int, include_empty: bool = False) -> QSeries:
    """R_st(d) computed from the Lambert forms; ``prec`` is the precision in the R-variable."""
    q_prec = ell * prec + d
    diff = rank_gf(s, ell, q_prec, include_empty) - rank_gf(t, ell, q_prec, include_empty)
    return dissect(diff, ell, d).truncate(prec)


def rank_bivariate(prec: int) -> BiSeries:
    """sum_n q^{n^2} (-q; q^2)_n / (zq^2, q^2/z)_n as a series in q over Laurent polynomials in z."""
    term = BiSeries.one(prec)
    total = term
    n = 1
    while n * n < prec:
        # term_n = term_{n-1} * q^{2n-1} (1 + q^{2n-1}) / ((1 - z q^{2n}) (1 - q^{2n}/z))
        term = bi_mul(term, BiSeries.from_terms({(2 * n - 1, 0): 1, (4 * n - 2, 0): 1}, prec))
        for zsign in (1, -1):
            geo = {(2 * n * j, zsign * j): 1 for j in range(prec // (2 * n) + 1)}
            term = bi_mul(term, BiSeries.from_terms(geo, prec))
        total = bi_add(total, term)
        n += 1
    return total


# -- multiplier dissections -------------------------------------------------


def multiplier_dissection(ell: int, prec: int) -> dict[int, QSeries]:
    """The l-dissection of the multiplier as sums of theta products.

    Returns {d: q^d-part} with every part written in q; the parts sum to
    :func:`multiplier`.
    """
    if ell == 3:
        return {
            0: _pochs([(1, 3), (-1, 6), (-1, 9), (-1, 12), (1, 15), (1, 18)], 18, prec),
            1: -shift(_pochs([(1, 9), (1, 27), (1, 36)], 36, prec - 1), 1),
            2: QSeries.zero(prec),
        }
    if ell == 5:
        return {
            0: _pochs([(-1, 10), (1, 15), (-1, 25), (1, 35), (-1, 40), (1, 50)], 50, prec),
            1: -shift(_pochs([(1, 5), (-1, 20), (-1, 25), (-1, 30), (1, 45), (1, 50)], 50, prec - 1), 1),
            2: QSeries.zero(prec),
            3: -shift(_pochs([(1, 25), (1, 75), (1, 100)], 100, prec - 3), 3),
            4: QSeries.zero(prec),
        }
    raise ValueError(f"no dissection formula for ell={ell}")


def _pochs(args: list[tuple[int, int]], k: int, prec: int) -> QSeries:
    out = QSeries.one(prec)
    for sign, a in args:
        out = mul(out, poch_inf(sign, a, k, prec))
    return out


# -- S2(3l - 4m) assembly ---------------------------------------------------


def double_primed_range(ell: int, m: int) -> list[int]:
    """a = 1 .. (l-1)/2 with a = +-m (mod l) left out."""
    return [a for a in range(1, (ell - 1) // 2 + 1) if (a - m) % ell and (a + m) % ell]


def _y(j: int, ell: int) -> int:
    return j * ell


def cross_product_term(ell: int, m: int, a: int, prec: int) -> QSeries:
    """P(-y^{2m+l}) P(y^4a) P(y^2a) P(0)^2 / (P(y^{2m-2a}) P(y^{2m+2a}) P(y^2m) P(-y^{2a+l})), base y^2l."""
    k = 2 * ell * ell

    def build(w: int) -> QSeries:
        num = big_p(-1, _y(2 * m + ell, ell), k, w)
        num = mul(num, big_p(1, _y(4 * a, ell), k, w))
        num = mul(num, big_p(1, _y(2 * a, ell), k, w))
        num = mul(num, p_zero(ell, w) ** 2)
        den = big_p(1, _y(2 * m - 2 * a, ell), k, w)
        den = mul(den, big_p(1, _y(2 * m + 2 * a, ell), k, w))
        den = mul(den, big_p(1, _y(2 * m, ell), k, w))
        den = mul(den, big_p(-1, _y(2 * a + ell, ell), k, w))
        return divide(num, den)

    return at_least(prec, build, "cross product term")


def bracket_raw(ell: int, m: int, prec: int) -> QSeries:
    """The coefficient of Sigma(m, 0) in the S2(3l - 4m) decomposition, summed term by term."""

    def build(w: int) -> QSeries:
        out = QSeries.monomial((-1) ** m, _y(m, ell) + 2 * m * (ell - m), w)
        out = out + shift(sigma_weight(m, ell, w), _y(2 * m, ell))
        for a in double_primed_range(ell, m):
            e = _y(m - 3 * a, ell) + 2 * (a + m) * (a - m + ell)
            out = out + scale(shift(sigma_weight(a, ell, w), e), (-1) ** (m + a))
        return out

    return at_least(prec, build, f"bracket ({ell},{m})")


_BRACKET_CLOSED = {(3, 2): (-1, 9), (5, 2): (-1, 19), (5, 1): (1, 10)}


def bracket_closed(ell: int, m: int, prec: int) -> QSeries:
    """c q^j * multiplier * (-y^l; y^2l)_inf / (y^2l; y^2l)_inf for the three tabulated (l, m)."""
    try:
        c, j = _BRACKET_CLOSED[(ell, m)]
    except KeyError:
        raise ValueError(f"no closed bracket form for (ell, m)=({ell},{m})") from None
    w = prec - j
    body = divide(mul(multiplier(w), poch_inf(-1, ell * ell, 2 * ell * ell, w)), poch_inf(1, 2 * ell * ell, 2 * ell * ell, w))
    return scale(shift(body, j), c)


def assemble_final(ell: int, m: int, prec: int, closed_bracket: bool = True) -> QSeries:
    """Right side of the S2(3l - 4m) decomposition; equals s2(3l - 4m, l)."""
    if (m % ell) == 0:
        raise ZeroDenominator(f"m={m} is a multiple of ell={ell}")

    def build(w: int) -> QSeries:
        out = -g_of(m, ell, w)
        for a in double_primed_range(ell, m):
            e = _y(m - 5 * a, ell) + 2 * (a + m) * (a - m + ell)
            out = out + scale(shift(cross_product_term(ell, m, a, w), e), (-1) ** (m + a))
        if closed_bracket and (ell, m) in _BRACKET_CLOSED:
            br = bracket_closed(ell, m, w)
        else:
            br = bracket_raw(ell, m, w)
        return out + mul(sigma_ab(m, 0, ell, w), br)

    return at_least(prec, build, f"final ({ell},{m})")


__all__ = [
    "multiplier",
    "distinct_odd_gf",
    "rank_m_gf",
    "rank_gf",
    "analytic_rank_diff",
    "rank_bivariate",
    "multiplier_dissection",
    "double_primed_range",
    "cross_product_term",
    "bracket_raw",
    "bracket_closed",
    "assemble_final",
    "s2",
]
