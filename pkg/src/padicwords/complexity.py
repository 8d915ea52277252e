"""Subword complexity of finite prefixes and the linear complexity bounds per family."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .suffix import factor_counts
from .words import FiniteWord, InfiniteWordStream, _word


@dataclass(frozen=True)
class ComplexityProfile:
    """p(n) for n = 1..n_max measured on a prefix of length ``window``.

    Values are lower bounds for the infinite word's complexity.
    """

    sequence_id: str
    window: int
    values: tuple[int, ...]
    prefix_lower_bound: bool = True

    @property
    def n_max(self) -> int:
        return len(self.values)

    def p(self, n: int) -> int:
        return self.values[n - 1]


def naive_complexity(prefix, n: int) -> int:
    s = _word(prefix).symbols
    if not 1 <= n <= len(s):
        raise ValueError("need 1 <= n <= |prefix|")
    return len({s[i:i + n] for i in range(len(s) - n + 1)})


def subword_complexity(prefix, n: int) -> int:
    """Number of distinct length-n factors of the prefix."""
    s = _word(prefix).symbols
    if not 1 <= n <= len(s):
        raise ValueError("need 1 <= n <= |prefix|")
    return int(factor_counts(s, n)[n])


def complexity_profile(prefix, n_max: int, sequence_id: str = "") -> ComplexityProfile:
    s = _word(prefix).symbols
    if not 1 <= n_max <= len(s):
        raise ValueError("need 1 <= n_max <= |prefix|")
    counts = factor_counts(s, n_max)
    return ComplexityProfile(sequence_id, len(s), tuple(int(c) for c in counts[1:n_max + 1]))


def complexity_kappa(prefix, n_range: tuple[int, int]) -> tuple[int, Fraction]:
    """Smallest integer kappa >= 2 with p(n) <= kappa*n on the range, and max p(n)/n."""
    n0, n1 = n_range
    if not 1 <= n0 <= n1:
        raise ValueError("need 1 <= n0 <= n1")
    prof = complexity_profile(prefix, n1)
    ratio = max(Fraction(prof.p(n), n) for n in range(n0, n1 + 1))
    return max(2, ceil(ratio)), ratio


def stable_profile(stream: InfiniteWordStream, n_max: int, window: int) -> tuple[ComplexityProfile, bool]:
    """Profile on ``window`` plus whether it is unchanged when the window doubles."""
    small = complexity_profile(stream.prefix(window), n_max, stream.name)
    big = complexity_profile(stream.prefix(2 * window), n_max, stream.name)
    return small, small.values == big.values


@dataclass(frozen=True)
class Automatic:
    k: int
    d: int

    def bound(self, n: int) -> int:
        return self.k * self.d ** 2 * n


@dataclass(frozen=True)
class Primitive:
    v: int
    b: int

    def __post_init__(self):
        if self.b < 2:
            raise ValueError("the primitive-morphic bound needs an alphabet of size >= 2")

    def bound(self, n: int) -> int:
        return 2 * self.v ** (4 * self.b - 2) * self.b ** 3 * n


@dataclass(frozen=True)
class Sturmian:
    def bound(self, n: int) -> int:
        return n + 1


Family = Automatic | Primitive | Sturmian


@dataclass(frozen=True)
class BoundRow:
    n: int
    p_n: int
    bound: int
    passed: bool


def check_complexity_bound(family: Family, profile: ComplexityProfile) -> list[BoundRow]:
    """Compare each p(n) with the family bound; Sturmian profiles must match n + 1 exactly."""
    rows = []
    for n in range(1, profile.n_max + 1):
        p_n, b = profile.p(n), family.bound(n)
        ok = p_n == b if isinstance(family, Sturmian) else p_n <= b
        rows.append(BoundRow(n, p_n, b, ok))
    return rows


def rows_to_csv(rows: list[BoundRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p_n", "bound", "pass"])
    for r in rows:
        w.writerow([r.n, r.p_n, r.bound, str(r.passed).lower()])
    return buf.getvalue()
