"""q-Pochhammer products, the P(z, q) product and bilateral theta series.

Arguments are always monomials ``sign * q^a``; a base ``q^k`` is given by
its exponent ``k``.  Factors with nonpositive exponent are rewritten as
``1 - s q^e = -s q^e (1 - s q^-e)`` so products with Laurent leading parts
come out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .series import InsufficientPrecision, QSeries, divide, mul, scale, shift


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")


def linear_product(factors: Iterable[tuple[int, int]], prec: int) -> QSeries:
    """Expand prod (1 - s q^e) over a finite list of (s, e) pairs.

    Factors whose exponent is never reached inside the window are skipped by
    the caller; here every factor is used.
    """
    const = 1
    shift = 0
    positive: list[tuple[int, int]] = []
    for s, e in factors:
        if e > 0:
            positive.append((s, e))
        elif e == 0:
            const *= 1 - s
        else:
            const *= -s
            shift += e
            positive.append((s, -e))
    if const == 0:
        return QSeries.zero(prec)
    n = prec - shift
    if n <= 0:
        return QSeries.zero(prec)
    out = [0] * n
    out[0] = const
    top = 0
    for s, e in positive:
        if e >= n:
            continue
        top = min(top + e, n - 1)
        for i in range(top, e - 1, -1):
            c = out[i - e]
            if c:
                out[i] -= s * c
    return QSeries(shift, prec, tuple(out))


def _progression(sign: int, a: int, k: int, count: int | None, prec: int, slack: int = 0) -> list[tuple[int, int]]:
    """Factors (sign, a + r*k) for r = 0, 1, ... that can affect the window."""
    if k < 1:
        raise ValueError(f"base exponent must be >= 1, got {k}")
    out = []
    r = 0
    while count is None or r < count:
        e = a + r * k
        if e >= prec + slack and e > 0:
            break
        out.append((sign, e))
        r += 1
    return out


def _laurent_slack(factors: Sequence[tuple[int, int]]) -> int:
    return -sum(e for _, e in factors if e < 0)


def poch_inf(sign: int, a: int, k: int, prec: int) -> QSeries:
    """(sign*q^a; q^k)_inf truncated below q^prec."""
    _check_sign(sign)
    head = _progression(sign, a, k, None, 0)
    slack = _laurent_slack(head)
    return linear_product(_progression(sign, a, k, None, prec, slack), prec)


def poch_fin(sign: int, a: int, k: int, n: int, prec: int) -> QSeries:
    """(sign*q^a; q^k)_n, the product of the first n factors."""
    _check_sign(sign)
    if n < 0:
        raise ValueError("finite Pochhammer length must be >= 0")
    if k < 1:
        raise ValueError(f"base exponent must be >= 1, got {k}")
    return linear_product([(sign, a + r * k) for r in range(n)], prec)


def big_p(sign: int, a: int, k: int, prec: int) -> QSeries:
    """P(z, q^k) = prod_{r>=1} (1 - z q^{k(r-1)}) (1 - q^{kr}/z) at z = sign*q^a."""
    _check_sign(sign)
    first = _progression(sign, a, k, None, 0)
    second = _progression(sign, k - a, k, None, 0)
    slack = _laurent_slack(first) + _laurent_slack(second)
    factors = _progression(sign, a, k, None, prec, slack) + _progression(sign, k - a, k, None, prec, slack)
    return linear_product(factors, prec)


def p_zero(ell: int, prec: int) -> QSeries:
    """P(0) = prod (1 - y^{2 ell r}) written in q with y = q^ell."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return poch_inf(1, 2 * ell * ell, 2 * ell * ell, prec)


def theta_sum(sign: int, a: int, k: int, prec: int) -> QSeries:
    """sum over all integers n of z^n q^{k n^2} with z = sign*q^a."""
    _check_sign(sign)
    if k < 1:
        raise ValueError(f"base exponent must be >= 1, got {k}")
    # k n^2 + a n < prec  <=>  n strictly between the two roots
    disc = a * a + 4 * k * prec
    if disc < 0:
        return QSeries.zero(prec)
    root = math.isqrt(disc)
    lo = (-a - root) // (2 * k) - 1
    hi = (-a + root) // (2 * k) + 1
    terms: dict[int, int] = {}
    for n in range(lo, hi + 1):
        e = k * n * n + a * n
        if e < prec:
            terms[e] = terms.get(e, 0) + (sign if n % 2 else 1)
    return QSeries.from_dict(terms, prec)


# -- product specifications ------------------------------------------------


@dataclass(frozen=True)
class PochFactor:
    sign: int
    a: int
    k: int
    length: int | None = None  # None means infinite

    def expand(self, prec: int) -> QSeries:
        if self.length is None:
            return poch_inf(self.sign, self.a, self.k, prec)
        return poch_fin(self.sign, self.a, self.k, self.length, prec)

    def to_json(self) -> dict:
        return {"sign": self.sign, "a": self.a, "k": self.k,
                "n": "inf" if self.length is None else self.length}

    @classmethod
    def from_json(cls, obj: Mapping) -> PochFactor:
        n = obj.get("n", "inf")
        return cls(int(obj["sign"]), int(obj["a"]), int(obj["k"]), None if n == "inf" else int(n))


@dataclass(frozen=True)
class ProductSpec:
    """c q^j * prod(numerator) / prod(denominator)."""

    prefactor: tuple[int, int] = (1, 0)
    numerator: tuple[PochFactor, ...] = field(default_factory=tuple)
    denominator: tuple[PochFactor, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        c, j = self.prefactor
        return {
            "prefactor": {"c": str(c), "j": j},
            "num": [f.to_json() for f in self.numerator],
            "den": [f.to_json() for f in self.denominator],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> ProductSpec:
        pre = obj.get("prefactor", {"c": "1", "j": 0})
        return cls(
            (int(pre["c"]), int(pre["j"])),
            tuple(PochFactor.from_json(f) for f in obj.get("num", [])),
            tuple(PochFactor.from_json(f) for f in obj.get("den", [])),
        )


def expand_product_spec(spec: ProductSpec, prec: int) -> QSeries:
    c, j = spec.prefactor
    work = prec - j
    for _ in range(8):
        num = QSeries.one(work)
        for f in spec.numerator:
            num = mul(num, f.expand(work))
        den = QSeries.one(work)
        for f in spec.denominator:
            den = mul(den, f.expand(work))
        out = scale(shift(divide(num, den), j), c)
        if out.prec >= prec:
            return out.truncate(prec)
        work += prec - out.prec
    raise InsufficientPrecision(f"could not reach precision {prec} for {spec}")
