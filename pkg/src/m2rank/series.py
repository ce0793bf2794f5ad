"""Exact truncated Laurent series in q with integer coefficients.

A :class:`QSeries` knows its coefficients for exponents ``min_exp <= e < prec``;
everything below ``min_exp`` is zero and everything from ``prec`` on is
unknown.  Every operation propagates ``prec`` pessimistically so that a
reported coefficient is always exact.

:class:`BiSeries` is the two-variable analogue whose q-coefficients are
Laurent polynomials in an auxiliary variable z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class SeriesError(ArithmeticError):
    """Base class for series arithmetic failures."""


class NotAUnit(SeriesError):
    pass


class ZeroSeries(SeriesError):
    pass


class NotExactlyDivisible(NotAUnit):
    """Division by a non-unit whose quotient is not an integer series."""


class NegativeSupport(SeriesError):
    pass


class OutOfRange(SeriesError, IndexError):
    pass


class InsufficientPrecision(SeriesError):
    pass


@dataclass(frozen=True)
class QSeries:
    min_exp: int
    prec: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != max(self.prec - self.min_exp, 0):
            raise ValueError(
                f"coefficient count {len(self.coeffs)} does not match window "
                f"[{self.min_exp}, {self.prec})"
            )
        if self.prec < self.min_exp:
            raise ValueError("prec must not be below min_exp")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_list(cls, coeffs: Iterable[int], min_exp: int = 0, prec: int | None = None) -> QSeries:
        cs = [int(c) for c in coeffs]
        if prec is None:
            prec = min_exp + len(cs)
        n = prec - min_exp
        if n <= 0:
            return cls(prec, prec, ())
        cs = cs[:n] + [0] * (n - len(cs))
        return cls(min_exp, prec, tuple(cs))

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], prec: int) -> QSeries:
        live = [e for e, c in terms.items() if c and e < prec]
        if not live:
            return cls.zero(prec)
        lo = min(live)
        cs = [0] * (prec - lo)
        for e in live:
            cs[e - lo] += terms[e]
        return cls(lo, prec, tuple(cs))

    @classmethod
    def zero(cls, prec: int) -> QSeries:
        return cls(prec, prec, ())

    @classmethod
    def monomial(cls, c: int, j: int, prec: int) -> QSeries:
        if c == 0 or j >= prec:
            return cls.zero(prec)
        return cls(j, prec, (c,) + (0,) * (prec - j - 1))

    @classmethod
    def one(cls, prec: int) -> QSeries:
        return cls.monomial(1, 0, prec)

    # -- inspection --------------------------------------------------------

    def coeff(self, e: int) -> int:
        if e >= self.prec:
            raise OutOfRange(f"exponent {e} is at or beyond precision {self.prec}")
        if e < self.min_exp:
            return 0
        return self.coeffs[e - self.min_exp]

    def valuation(self) -> int | None:
        """Exponent of the lowest nonzero coefficient, or None if none is known."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.min_exp + i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def canonicalize(self) -> QSeries:
        v = self.valuation()
        if v is None:
            return QSeries.zero(self.prec)
        if v == self.min_exp:
            return self
        return QSeries(v, self.prec, self.coeffs[v - self.min_exp:])

    def truncate(self, prec: int) -> QSeries:
        if prec >= self.prec:
            return self
        if prec <= self.min_exp:
            return QSeries.zero(prec)
        return QSeries(self.min_exp, prec, self.coeffs[: prec - self.min_exp])

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def __getitem__(self, e: int) -> int:
        return self.coeff(e)

    def __repr__(self) -> str:
        body = " + ".join(_term_str(c, e) for e, c in self.terms()[:12]) or "0"
        return f"QSeries({body} + O(q^{self.prec}))"

    # -- operators ---------------------------------------------------------

    def __add__(self, other: QSeries | int) -> QSeries:
        return add(self, _lift(other, self.prec))

    __radd__ = __add__

    def __sub__(self, other: QSeries | int) -> QSeries:
        return add(self, negate(_lift(other, self.prec)))

    def __rsub__(self, other: QSeries | int) -> QSeries:
        return add(_lift(other, self.prec), negate(self))

    def __neg__(self) -> QSeries:
        return negate(self)

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: QSeries | int) -> QSeries:
        return divide(self, _lift(other, self.prec))

    def __rtruediv__(self, other: QSeries | int) -> QSeries:
        return divide(_lift(other, self.prec), self)

    def __pow__(self, n: int) -> QSeries:
        return power(self, n)


def _lift(x: QSeries | int, prec: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries.monomial(int(x), 0, prec)


def _term_str(c: int, e: int) -> str:
    if e == 0:
        return str(c)
    mono = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


# -- ring operations -------------------------------------------------------


def add(a: QSeries, b: QSeries) -> QSeries:
    prec = min(a.prec, b.prec)
    lo = min(a.min_exp, b.min_exp)
    if prec <= lo:
        return QSeries.zero(prec)
    out = [0] * (prec - lo)
    for s in (a, b):
        off = s.min_exp - lo
        for i, c in enumerate(s.coeffs[: max(prec - s.min_exp, 0)]):
            if c:
                out[off + i] += c
    return QSeries(lo, prec, tuple(out))


def negate(a: QSeries) -> QSeries:
    return QSeries(a.min_exp, a.prec, tuple(-c for c in a.coeffs))


def scale(a: QSeries, c: int) -> QSeries:
    return QSeries(a.min_exp, a.prec, tuple(c * x for x in a.coeffs))


def shift(a: QSeries, k: int) -> QSeries:
    return QSeries(a.min_exp + k, a.prec + k, a.coeffs)


def mul(a: QSeries, b: QSeries) -> QSeries:
    a = a.canonicalize()
    b = b.canonicalize()
    prec = min(a.prec + b.min_exp, b.prec + a.min_exp)
    lo = a.min_exp + b.min_exp
    if prec <= lo or not a.coeffs or not b.coeffs:
        return QSeries.zero(prec)
    n = prec - lo
    out = [0] * n
    bterms = [(j, c) for j, c in enumerate(b.coeffs[:n]) if c]
    for i, x in enumerate(a.coeffs[:n]):
        if not x:
            continue
        lim = n - i
        for j, y in bterms:
            if j >= lim:
                break
            out[i + j] += x * y
    return QSeries(lo, prec, tuple(out))


def invert_unit(a: QSeries) -> QSeries:
    a = a.canonicalize()
    v = a.valuation()
    if v is None:
        raise ZeroSeries("series has no nonzero coefficient inside its precision window")
    lead = a.coeffs[0]
    if lead not in (1, -1):
        raise NotAUnit(f"lowest coefficient {lead} at q^{v} is not a unit")
    n = a.prec - v
    tail = [(k, c) for k, c in enumerate(a.coeffs) if c and k > 0]
    out = [0] * n
    out[0] = lead
    for m in range(1, n):
        acc = 0
        for k, c in tail:
            if k > m:
                break
            acc += c * out[m - k]
        out[m] = -lead * acc
    return QSeries(-v, a.prec - 2 * v, tuple(out))


def divide(a: QSeries, b: QSeries) -> QSeries:
    """Exact quotient a/b.

    Uses unit inversion when the divisor's lowest coefficient is +-1, and
    otherwise long division that fails unless every quotient coefficient is
    an integer.
    """
    b = b.canonicalize()
    v = b.valuation()
    if v is None:
        raise ZeroSeries("division by a series with no nonzero coefficient in range")
    lead = b.coeffs[0]
    if lead in (1, -1):
        return mul(a, invert_unit(b))
    a = a.canonicalize()
    prec = min(a.prec, b.prec - v + a.min_exp)
    n = prec - a.min_exp
    if n <= 0 or not a.coeffs:
        return QSeries.zero(prec - v)
    tail = [(k, c) for k, c in enumerate(b.coeffs) if c and k > 0]
    out = [0] * n
    for m in range(n):
        acc = a.coeffs[m] if m < len(a.coeffs) else 0
        for k, c in tail:
            if k > m:
                break
            acc -= c * out[m - k]
        qt, r = divmod(acc, lead)
        if r:
            raise NotExactlyDivisible(
                f"coefficient {acc} at relative index {m} is not divisible by {lead}"
            )
        out[m] = qt
    return QSeries(a.min_exp - v, prec - v, tuple(out))


def power(a: QSeries, n: int) -> QSeries:
    if n < 0:
        return power(invert_unit(a), -n)
    if n == 0:
        # a^0 is exactly 1; keep the relative window of a
        return QSeries.one(a.prec - a.canonicalize().min_exp)
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


# -- exponent manipulation -------------------------------------------------


def substitute_power(a: QSeries, k: int) -> QSeries:
    """Replace q by q^k."""
    if k < 1:
        raise ValueError("substitution power must be positive")
    if k == 1:
        return a
    if not a.coeffs:
        return QSeries.zero(k * a.prec)
    out = [0] * (k * (a.prec - a.min_exp))
    for i, c in enumerate(a.coeffs):
        out[k * i] = c
    return QSeries(k * a.min_exp, k * a.prec, tuple(out))


def dissect(a: QSeries, ell: int, d: int) -> QSeries:
    """Return sum_n c(ell*n + d) q^n."""
    if ell < 1 or not 0 <= d < ell:
        raise ValueError(f"need ell >= 1 and 0 <= d < ell, got ell={ell}, d={d}")
    a = a.canonicalize() if a.min_exp < 0 else a
    if a.min_exp < 0:
        raise NegativeSupport("dissection of a series with negative exponents")
    prec = (a.prec - d - 1) // ell + 1
    if prec <= 0:
        return QSeries.zero(prec)
    return QSeries.from_list((a.coeff(ell * n + d) for n in range(prec)), 0, prec)


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    left: int
    right: int


def first_mismatch(a: QSeries, b: QSeries, order: int) -> Mismatch | None:
    lo = min(a.min_exp, b.min_exp)
    for e in range(lo, order + 1):
        x, y = a.coeff(e), b.coeff(e)
        if x != y:
            return Mismatch(e, x, y)
    return None


def equal_to_order(a: QSeries, b: QSeries, order: int) -> tuple[bool, Mismatch | None]:
    """Compare coefficients of q^e for every e <= order."""
    if a.prec <= order or b.prec <= order:
        raise InsufficientPrecision(
            f"comparison through q^{order} needs precision > {order}, "
            f"have {a.prec} and {b.prec}"
        )
    mm = first_mismatch(a, b, order)
    return mm is None, mm


# -- JSON encoding ---------------------------------------------------------


def to_json(a: QSeries) -> dict:
    return {
        "variable": "q",
        "min_exp": a.min_exp,
        "prec": a.prec,
        "coeffs": [str(c) for c in a.coeffs],
    }


def from_json(obj: Mapping) -> QSeries:
    if obj.get("variable", "q") != "q":
        raise ValueError(f"unsupported variable {obj.get('variable')!r}")
    return QSeries(int(obj["min_exp"]), int(obj["prec"]), tuple(int(c) for c in obj["coeffs"]))


# -- bivariate series ------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """Finite-support Laurent polynomial in z; stores no zero coefficients."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls(((0, c),)) if c else cls()

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def coeff(self, m: int) -> int:
        return self.as_dict().get(m, 0)


@dataclass(frozen=True)
class BiSeries:
    min_exp: int
    prec: int
    coeffs: tuple[LaurentPoly, ...]

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], int], prec: int) -> BiSeries:
        """Build from {(q_exp, z_exp): coefficient}."""
        lo = min((e for (e, _), c in terms.items() if c and e < prec), default=prec)
        rows: list[dict[int, int]] = [{} for _ in range(prec - lo)]
        for (e, m), c in terms.items():
            if c and e < prec:
                rows[e - lo][m] = rows[e - lo].get(m, 0) + c
        return cls(lo, prec, tuple(LaurentPoly.from_dict(r) for r in rows))

    @classmethod
    def one(cls, prec: int) -> BiSeries:
        return cls.from_terms({(0, 0): 1}, prec)

    def coeff(self, e: int) -> LaurentPoly:
        if e >= self.prec:
            raise OutOfRange(f"exponent {e} is at or beyond precision {self.prec}")
        if e < self.min_exp:
            return LaurentPoly()
        return self.coeffs[e - self.min_exp]

    def canonicalize(self) -> BiSeries:
        for i, p in enumerate(self.coeffs):
            if p:
                return BiSeries(self.min_exp + i, self.prec, self.coeffs[i:])
        return BiSeries(self.prec, self.prec, ())


def bi_add(a: BiSeries, b: BiSeries) -> BiSeries:
    prec = min(a.prec, b.prec)
    lo = min(a.min_exp, b.min_exp, prec)
    return BiSeries(lo, prec, tuple(a.coeff(e) + b.coeff(e) for e in range(lo, prec)))


def bi_scale(a: BiSeries, c: int) -> BiSeries:
    return BiSeries(a.min_exp, a.prec, tuple(p * c for p in a.coeffs))


def bi_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    a = a.canonicalize()
    b = b.canonicalize()
    prec = min(a.prec + b.min_exp, b.prec + a.min_exp)
    lo = a.min_exp + b.min_exp
    n = max(prec - lo, 0)
    out = [LaurentPoly() for _ in range(n)]
    for i, x in enumerate(a.coeffs[:n]):
        if not x:
            continue
        for j, y in enumerate(b.coeffs[: n - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return BiSeries(lo, prec, tuple(out))


def bi_invert_unit(a: BiSeries) -> BiSeries:
    a = a.canonicalize()
    if not a.coeffs:
        raise ZeroSeries("bivariate series has no nonzero coefficient in range")
    lead = a.coeffs[0]
    if lead.terms not in (((0, 1),), ((0, -1),)):
        raise NotAUnit(f"lowest coefficient {lead.as_dict()} is not a constant +-1")
    u = lead.terms[0][1]
    v = a.min_exp
    n = a.prec - v
    out = [LaurentPoly() for _ in range(n)]
    out[0] = LaurentPoly.const(u)
    for m in range(1, n):
        acc = LaurentPoly()
        for k in range(1, m + 1):
            c = a.coeffs[k]
            if c and out[m - k]:
                acc = acc + c * out[m - k]
        out[m] = -acc * u
    return BiSeries(-v, a.prec - 2 * v, tuple(out))


def bi_coeff_z(a: BiSeries, m: int) -> QSeries:
    """The series in q multiplying z^m."""
    return QSeries.from_list((p.coeff(m) for p in a.coeffs), a.min_exp, a.prec)
