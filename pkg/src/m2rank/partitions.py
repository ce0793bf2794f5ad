"""Brute-force oracle: partitions without repeated odd parts and their M2-rank.

The tables here count the empty partition (weight 0, rank 0) unless
``include_empty=False`` is passed.  The closed-form generating functions for
N2(m, n) and N2(s, l, n) (and the rank-difference theorems built on them)
have constant term 0, i.e. they only see partitions of positive integers,
while the two-variable generating function has constant term 1.  The flag
lets each comparison use the matching convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .series import QSeries

NMAX_CONTRACT = 45


class InvalidPartition(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ps = self.parts
        if any(p <= 0 for p in ps):
            raise InvalidPartition(f"parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise InvalidPartition(f"parts must be weakly decreasing: {ps}")
        odd = [p for p in ps if p % 2]
        if len(odd) != len(set(odd)):
            raise InvalidPartition(f"odd part repeated in {ps}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0


@dataclass(frozen=True)
class TwoModularDiagram:
    """Rows of 2s, each optionally closed by a single 1."""

    rows: tuple[tuple[int, bool], ...]

    @property
    def columns(self) -> int:
        return max((t + one for t, one in self.rows), default=0)

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(2 * t + one for t, one in self.rows)

    def validate(self) -> None:
        for (t, one), (t2, one2) in zip(self.rows, self.rows[1:]):
            if t2 > t:
                raise InvalidPartition("a 2 sits directly below a 1 or rows increase")
            if one and t2 + one2 > t:
                raise InvalidPartition("a 1 is not the last entry of its column")


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n with distinct odd parts, largest part first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [Partition(p) for p in _gen(n, n, frozenset())]


def _gen(n: int, cap: int, used_odd: frozenset[int]) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for part in range(min(n, cap), 0, -1):
        if part % 2 and part in used_odd:
            continue
        nxt = used_odd | {part} if part % 2 else used_odd
        for rest in _gen(n - part, part, nxt):
            yield (part,) + rest


def m2_rank(p: Partition | tuple[int, ...]) -> int:
    """ceil(largest / 2) minus the number of parts.

    A bare tuple may be any partition (odd parts may repeat); only positivity
    and ordering are checked.
    """
    parts = p.parts if isinstance(p, Partition) else tuple(p)
    if any(x <= 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise InvalidPartition(f"not a partition: {parts}")
    return ((parts[0] if parts else 0) + 1) // 2 - len(parts)


def to_2modular(p: Partition | tuple[int, ...]) -> TwoModularDiagram:
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    d = TwoModularDiagram(tuple((part // 2, bool(part % 2)) for part in p.parts))
    d.validate()
    return d


def rank_via_diagram(d: TwoModularDiagram) -> int:
    return d.columns - len(d.rows)


@lru_cache(maxsize=8)
def _rank_counts(nmax: int) -> tuple[dict[int, int], ...]:
    return tuple(dict(Counter(m2_rank(p) for p in enumerate_partitions(n))) for n in range(nmax + 1))


def rank_distribution(nmax: int, include_empty: bool = True) -> dict[int, dict[int, int]]:
    """n -> {m: N2(m, n)} for 0 <= n <= nmax."""
    table = {n: dict(c) for n, c in enumerate(_rank_counts(nmax))}
    if not include_empty:
        table[0] = {}
    return table


def n2(m: int, n: int, include_empty: bool = True) -> int:
    return rank_distribution(n, include_empty)[n].get(m, 0)


def residue_counts(ell: int, nmax: int, include_empty: bool = True) -> dict[tuple[int, int], int]:
    """(s, n) -> N2(s, ell, n), the count with rank congruent to s mod ell."""
    out = {(s, n): 0 for s in range(ell) for n in range(nmax + 1)}
    for n, dist in rank_distribution(nmax, include_empty).items():
        for m, c in dist.items():
            out[(m % ell, n)] += c
    return out


def rank_series(m: int, nmax: int, include_empty: bool = True) -> QSeries:
    """sum_n N2(m, n) q^n through q^nmax."""
    dist = rank_distribution(nmax, include_empty)
    return QSeries.from_list([dist[n].get(m, 0) for n in range(nmax + 1)])


def residue_series(s: int, ell: int, nmax: int, include_empty: bool = True) -> QSeries:
    table = residue_counts(ell, nmax, include_empty)
    return QSeries.from_list([table[(s % ell, n)] for n in range(nmax + 1)])


def brute_rank_diff(s: int, t: int, ell: int, d: int, nmax: int, include_empty: bool = True) -> QSeries:
    """sum_n (N2(s, ell, ell n + d) - N2(t, ell, ell n + d)) q^n for ell n + d <= nmax."""
    if not (0 <= s < ell and 0 <= t < ell and 0 <= d < ell):
        raise ValueError("s, t and d must lie in [0, ell)")
    table = residue_counts(ell, nmax, include_empty)
    count = (nmax - d) // ell + 1
    return QSeries.from_list(
        [table[(s, ell * n + d)] - table[(t, ell * n + d)] for n in range(count)]
    )
