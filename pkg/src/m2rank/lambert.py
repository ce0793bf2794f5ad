"""Generalized Lambert series, the sums S2(b) and the g-function.

Every sum here has the shape

    sum_n (-1)^n q^{N(n)} / (1 - q^{D(n)})

with N quadratic and D linear in n.  A term with D(n) < 0 is rewritten as
``-q^{-D} / (1 - q^{-D})`` before its geometric expansion, so its lowest
exponent is N(n) + |D(n)|.  That valuation is a convex function of n, which
is what makes the outward scan below terminate correctly.

The Sigma(a, b) sums live in y = q^ell but are returned in q.
"""

from __future__ import annotations

from typing import Callable

from .products import big_p, p_zero
from .series import InsufficientPrecision, QSeries, mul, divide, shift

MARGIN = 3


class ZeroDenominator(ArithmeticError):
    pass


def lambert_sum(
    num: Callable[[int], int],
    den: Callable[[int], int],
    prec: int,
    omit_zero: bool = False,
    margin: int = MARGIN,
) -> QSeries:
    """Expand sum_n (-1)^n q^num(n) / (1 - q^den(n)) below q^prec.

    The scan moves outward from n = 0 in each direction and stops once
    ``margin`` consecutive indices have valuation >= prec without the
    valuation decreasing.
    """

    def valuation(n: int) -> int:
        d = den(n)
        if d == 0:
            raise ZeroDenominator(f"denominator 1 - q^0 at n = {n}")
        return num(n) + max(0, -d)

    live: list[tuple[int, int]] = []
    if not omit_zero:
        v0 = valuation(0)
        if v0 < prec:
            live.append((0, v0))
    for step in (1, -1):
        n = step
        quiet = 0
        prev = valuation(0) if den(0) != 0 else None
        while quiet < margin:
            v = valuation(n)
            if v < prec:
                live.append((n, v))
                quiet = 0
            elif prev is not None and v < prev:
                quiet = 0
            else:
                quiet += 1
            prev = v
            n += step
    if not live:
        return QSeries.zero(prec)
    lo = min(v for _, v in live)
    out = [0] * (prec - lo)
    for n, v in live:
        d = den(n)
        sign = -1 if n % 2 else 1
        if d < 0:
            sign = -sign
            d = -d
        for e in range(v - lo, prec - lo, d):
            out[e] += sign
    return QSeries(lo, prec, tuple(out))


def sigma_ab(a: int, b: int, ell: int, prec: int, margin: int = MARGIN) -> QSeries:
    """Sigma(a, b) = sum_n (-1)^n y^{4bn + ell n(2n+3)} / (1 - y^{2 ell n + 2a}), in q."""
    if a % ell == 0:
        raise ZeroDenominator(f"Sigma({a},{b}) with ell={ell}: n = {-a // ell} has a vanishing denominator")
    return lambert_sum(
        lambda n: ell * (4 * b * n + ell * n * (2 * n + 3)),
        lambda n: ell * (2 * ell * n + 2 * a),
        prec,
        margin=margin,
    )


def sigma_0b(b: int, ell: int, prec: int, margin: int = MARGIN) -> QSeries:
    """Sigma(0, b): the n = 0 term is omitted."""
    return lambert_sum(
        lambda n: ell * (4 * b * n + ell * n * (2 * n + 3)),
        lambda n: 2 * ell * ell * n,
        prec,
        omit_zero=True,
        margin=margin,
    )


def s2(b: int, ell: int, prec: int, margin: int = MARGIN) -> QSeries:
    """S2(b) = sum'_n (-1)^n q^{2n^2 + bn} / (1 - q^{2 ell n})."""
    return lambert_sum(
        lambda n: 2 * n * n + b * n,
        lambda n: 2 * ell * n,
        prec,
        omit_zero=True,
        margin=margin,
    )


def at_least(prec: int, build: Callable[[int], QSeries], what: str = "series") -> QSeries:
    """Re-run ``build`` with a wider working window until it reaches ``prec``."""
    work = prec
    for _ in range(10):
        out = build(work)
        if out.prec >= prec:
            return out.truncate(prec)
        work += prec - out.prec
    raise InsufficientPrecision(f"{what} did not reach precision {prec}")


def sigma_weight(a: int, ell: int, prec: int) -> QSeries:
    """P(-y^l, y^2l) P(y^4a, y^2l) / (P(y^2a, y^2l) P(-y^{2a+l}, y^2l)), in q."""
    k = 2 * ell * ell

    def build(w: int) -> QSeries:
        num = mul(big_p(-1, ell * ell, k, w), big_p(1, 4 * a * ell, k, w))
        den = mul(big_p(1, 2 * a * ell, k, w), big_p(-1, (2 * a + ell) * ell, k, w))
        return divide(num, den)

    return at_least(prec, build, f"Sigma weight for a={a}")


def g_of(a: int, ell: int, prec: int) -> QSeries:
    """g(a) = y^2a w(a) Sigma(a,0) - y^6a Sigma(2a,a) - Sigma(0,-a), in q.

    Here w(a) is :func:`sigma_weight`.  Any a not divisible by ell is
    accepted, so shifted and reflected arguments can be evaluated too.
    """
    if a % ell == 0:
        raise ZeroDenominator(f"g({a}) is undefined for ell={ell}")

    def build(w: int) -> QSeries:
        first = shift(mul(sigma_weight(a, ell, w), sigma_ab(a, 0, ell, w)), 2 * a * ell)
        second = shift(sigma_ab(2 * a, a, ell, w), 6 * a * ell)
        return first - second - sigma_0b(-a, ell, w)

    return at_least(prec, build, f"g({a})")


__all__ = [
    "ZeroDenominator",
    "lambert_sum",
    "sigma_ab",
    "sigma_0b",
    "s2",
    "sigma_weight",
    "g_of",
    "at_least",
    "p_zero",
]
