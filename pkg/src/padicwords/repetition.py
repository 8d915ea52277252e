"""Repetitions U V^w at the start of a word and lower bounds on its Diophantine exponent."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import InfeasibleRepetition
from .suffix import longest_previous_factor
from .words import FiniteWord, InfiniteWordStream, _word, fractional_power, occurrences, power_length


@dataclass(frozen=True)
class RepetitionTriple:
    """A prefix of the form U V^w; ``w`` is kept exact."""

    U: FiniteWord
    V: FiniteWord
    w: Fraction

    def __post_init__(self):
        if len(self.V) == 0:
            raise ValueError("V must be nonempty")
        object.__setattr__(self, "w", Fraction(self.w))
        if self.w <= 0:
            raise ValueError("w must be positive")

    @property
    def power_len(self) -> int:
        """|V^w|."""
        return power_length(len(self.V), self.w)

    @property
    def total_len(self) -> int:
        """|U V^w|."""
        return len(self.U) + self.power_len

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.total_len, len(self.U) + len(self.V))

    def word(self) -> FiniteWord:
        return self.U + fractional_power(self.V, self.w)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# constructive repetition from linear complexity


def find_repetition(source, n: int, kappa: int) -> RepetitionTriple:
    """Build U, V, w from two occurrences of a length-n factor inside the first (kappa+1)n letters.

    ``source`` is an :class:`InfiniteWordStream` or a finite word of length at
    least (kappa+1)n. Among repeated factors the leftmost first occurrence wins,
    paired with its next occurrence.
    """
    if n < 1 or kappa < 2:
        raise ValueError("need n >= 1 and kappa >= 2")
    horizon = (kappa + 1) * n
    if isinstance(source, InfiniteWordStream):
        A = source.prefix(horizon)
    else:
        A = _word(source)
        if len(A) < horizon:
            raise ValueError(f"need a prefix of length {horizon}, got {len(A)}")
        A = A[:horizon]
    s = A.symbols
    first: dict[tuple, int] = {}
    best = None
    for i in range(horizon - n + 1):
        f = s[i:i + n]
        if f in first:
            i1 = first[f]
            # the next occurrence after i1 is the earliest i seen with this factor
            if best is None or i1 < best[0]:
                best = (i1, i)
        else:
            first[f] = i
    if best is None:
        raise InfeasibleRepetition(
            f"no factor of length {n} repeats in the first {horizon} letters; "
            f"complexity exceeds {kappa}*n here")
    i1, i2 = best
    # keep the letters before the two occurrences different
    while i1 > 0 and s[i1 - 1] == s[i2 - 1]:
        i1, i2 = i1 - 1, i2 - 1
    gap = i2 - i1
    U = A[:i1]
    if gap >= n:
        return RepetitionTriple(U, A[i1:i2], Fraction(gap + n, gap))
    d = Fraction(n, gap)
    half = ceil(d / 2)
    return RepetitionTriple(U, A[i1:i1 + gap * half], (d + 1) / half)


def check_triple(triple: RepetitionTriple, prefix, n: int, kappa: int) -> dict[str, bool]:
    """Re-verify the six repetition properties directly on the words."""
    A = _word(prefix).symbols
    U, V, w = triple.U.symbols, triple.V.symbols, Fraction(triple.w)
    built = U + fractional_power(triple.V, w).symbols
    lu, lv = len(U), len(V)
    return {
        "i": len(built) <= len(A) and A[:len(built)] == built,
        "ii": lu <= 2 * kappa * lv,
        "iii": Fraction(n, 2) <= lv <= kappa * n,
        "iv": lu == 0 or U[-1] != V[-1],
        "v": Fraction(len(built), lu + lv) >= 1 + Fraction(1, 4 * kappa + 2),
        "vi": lu + lv <= (kappa + 1) * n - 1,
    }


def triple_report(triple: RepetitionTriple, n: int, kappa: int, checks: dict[str, bool]) -> dict:
    return {
        "n": n,
        "kappa": kappa,
        "U_len": len(triple.U),
        "V_len": len(triple.V),
        "w": _frac(triple.w),
        "ratio": _frac(triple.ratio),
        "checks": dict(checks),
    }


# ---------------------------------------------------------------------------
# best repetition at the start of a finite word


def best_prefix_repetition(prefix, min_total: int = 0) -> RepetitionTriple:
    """The decomposition U V^w (a prefix of ``prefix``) with the largest |U V^w| / |U V|.

    With j = |U V| fixed, the best choice of U gives |U V^w| = j + lpf[j], where
    lpf is the longest previous factor array. Only decompositions with
    |U V^w| > ``min_total`` compete; ties go to the smallest j and then the
    smallest |U|. If nothing qualifies the whole prefix is returned with w = 1.
    """
    A = _word(prefix)
    L = len(A)
    if L < 2:
        raise ValueError("need a prefix of length >= 2")
    if not 0 <= min_total < L:
        raise ValueError("min_total must lie in [0, len(prefix))")
    lpf = longest_previous_factor(A.symbols)
    best_j, best_r = None, Fraction(1)
    for j in range(1, L):
        if j + lpf[j] <= min_total:
            continue
        r = Fraction(j + lpf[j], j)
        if best_j is None or r > best_r:
            best_j, best_r = j, r
    if best_j is None:
        return RepetitionTriple(A[:0], A, Fraction(1))
    j, ext = best_j, lpf[best_j]
    i = _first_occurrence(A, j, ext)
    period = j - i
    return RepetitionTriple(A[:i], A[i:j], Fraction(period + ext, period))


def _first_occurrence(A: FiniteWord, j: int, ext: int) -> int:
    if ext == 0:
        return 0
    if A.alphabet_size <= 256:
        return A.to_bytes()[:j + ext - 1].find(A.to_bytes()[j:j + ext])
    return occurrences(A[j:j + ext], A[:j + ext - 1])[0]


# ---------------------------------------------------------------------------
# certified lower bounds on the Diophantine exponent


@dataclass(frozen=True)
class DioEstimate:
    """A lower bound on the exponent with the repetitions that witness it."""

    bound: Fraction
    chain: tuple[RepetitionTriple, ...]
    prefix_length: int
    candidates: tuple[RepetitionTriple, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "bound": _frac(self.bound),
            "prefix_length": self.prefix_length,
            "chain": [
                {"U_len": len(t.U), "V_len": len(t.V), "w": _frac(t.w),
                 "power_len": t.power_len, "ratio": _frac(t.ratio)}
                for t in self.chain
            ],
        }


def dio_lower_bound(source, prefix_lengths, min_chain: int = 2) -> DioEstimate:
    """Lower bound from the best prefix repetition at each length.

    The rung at length L only considers repetitions U V^w ending after the
    previous rung, so every rung contributes a repetition at its own scale.
    Repetitions are grouped by |V^w| (keeping the best ratio per group). The
    bound is the ``min_chain``-th largest group ratio, so at least ``min_chain``
    repetitions with strictly increasing |V^w| reach it. Fewer groups give 1.
    """
    lengths = list(prefix_lengths)
    if not lengths or any(a >= b for a, b in zip(lengths, lengths[1:])):
        raise ValueError("prefix lengths must be a nonempty increasing list")
    if min_chain < 1:
        raise ValueError("min_chain must be positive")
    if isinstance(source, InfiniteWordStream):
        source.prefix(lengths[-1])
        word_at = source.prefix
    else:
        full = _word(source)
        if len(full) < lengths[-1]:
            raise ValueError("prefix shorter than the largest requested length")
        word_at = lambda L: full[:L]  # noqa: E731
    groups: dict[int, RepetitionTriple] = {}
    found = []
    prev = 0
    for L in lengths:
        t = best_prefix_repetition(word_at(L), prev)
        prev = L
        found.append(t)
        key = t.power_len
        if key not in groups or t.ratio > groups[key].ratio:
            groups[key] = t
    ratios = sorted((t.ratio for t in groups.values()), reverse=True)
    bound = ratios[min_chain - 1] if len(ratios) >= min_chain else Fraction(1)
    bound = max(bound, Fraction(1))
    chain = ()
    if len(ratios) >= min_chain:
        chain = tuple(sorted((t for t in groups.values() if t.ratio >= bound), key=lambda t: t.power_len))
    return DioEstimate(bound, chain, lengths[-1], tuple(found))
