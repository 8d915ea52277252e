"""Finite words, lazily evaluated infinite words, and basic factor search."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PrecisionExhausted


@dataclass(frozen=True)
class FiniteWord:
    """An immutable word over the alphabet {0, ..., alphabet_size - 1}."""

    symbols: tuple[int, ...]
    alphabet_size: int = 2

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for s in self.symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(f"symbol {s} outside alphabet of size {self.alphabet_size}")

    @classmethod
    def from_str(cls, text: str, alphabet_size: int | None = None) -> FiniteWord:
        syms = tuple(int(c, 36) for c in text)
        if alphabet_size is None:
            alphabet_size = max(2, max(syms, default=0) + 1)
        return cls(syms, alphabet_size)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return FiniteWord(self.symbols[index], self.alphabet_size)
        return self.symbols[index]

    def __add__(self, other: FiniteWord) -> FiniteWord:
        return FiniteWord(self.symbols + tuple(other), max(self.alphabet_size, other.alphabet_size))

    def __str__(self) -> str:
        if self.alphabet_size <= 36:
            return "".join(np.base_repr(s, 36).lower() for s in self.symbols)
        return ",".join(map(str, self.symbols))

    def to_bytes(self) -> bytes:
        return bytes(self.symbols) if self.alphabet_size <= 256 else b""


def _word(w, alphabet_size: int | None = None) -> FiniteWord:
    if isinstance(w, FiniteWord):
        return w
    if isinstance(w, str):
        return FiniteWord.from_str(w, alphabet_size)
    syms = tuple(w)
    return FiniteWord(syms, alphabet_size or max(2, max(syms, default=0) + 1))


def fractional_power(W: FiniteWord | str, w) -> FiniteWord:
    """Return W^w: floor(w) copies of W, then the prefix of W of length ceil(frac(w)|W|)."""
    W = _word(W)
    w = Fraction(w)
    if w < 0:
        raise ValueError("exponent must be non-negative")
    if w > 0 and len(W) == 0:
        raise ValueError("cannot raise the empty word to a positive power")
    whole = floor(w)
    tail = ceil((w - whole) * len(W))
    return FiniteWord(W.symbols * whole + W.symbols[:tail], W.alphabet_size)


def power_length(length: int, w) -> int:
    """|V^w| for a word V of the given length."""
    w = Fraction(w)
    whole = floor(w)
    return whole * length + ceil((w - whole) * length)


def occurrences(W: FiniteWord | str, A: FiniteWord | str) -> list[int]:
    """All start positions of W in A (Knuth-Morris-Pratt)."""
    pat = _word(W).symbols
    text = _word(A).symbols
    m = len(pat)
    if m == 0:
        raise ValueError("pattern must be nonempty")
    fail = [0] * m
    k = 0
    for i in range(1, m):
        while k and pat[i] != pat[k]:
            k = fail[k - 1]
        if pat[i] == pat[k]:
            k += 1
        fail[i] = k
    out = []
    k = 0
    for i, c in enumerate(text):
        while k and c != pat[k]:
            k = fail[k - 1]
        if c == pat[k]:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k - 1]
    return out


def detect_ultimate_period(prefix: FiniteWord | str, max_preperiod: int, max_period: int):
    """Find the smallest (|U|, |V|) with prefix = U V^t, or None.

    A candidate period must be witnessed at least twice after U, i.e.
    ``len(prefix) - |U| >= 2 |V|``. The result only describes the examined
    prefix; for an infinite word it is a hypothesis.
    """
    word = _word(prefix)
    if max_preperiod < 0 or max_period < 1:
        raise ValueError("need max_preperiod >= 0 and max_period >= 1")
    n = len(word)
    if n < 2:
        raise ValueError("prefix too short to witness any period")
    a = np.asarray(word.symbols, dtype=np.int64)
    best = None
    for v in range(1, min(max_period, n // 2) + 1):
        bad = np.flatnonzero(a[:-v] != a[v:])
        u = int(bad[-1]) + 1 if bad.size else 0
        if u > max_preperiod or n - u < 2 * v:
            continue
        if best is None or (u, v) < best:
            best = (u, v)
    if best is None:
        return None
    u, v = best
    return word[:u], word[u:u + v]


class InfiniteWordStream:
    """A memoized infinite word.

    ``producer(start, stop)`` returns the symbols at offsets ``start..stop-1``
    (offset 0 is index ``index_base``). Not thread-safe.
    """

    def __init__(self, producer: Callable[[int, int], Sequence[int]], alphabet_size: int,
                 index_base: int = 0, name: str = ""):
        if index_base not in (0, 1):
            raise ValueError("index_base must be 0 or 1")
        self._producer = producer
        self._cache: list[int] = []
        self.alphabet_size = alphabet_size
        self.index_base = index_base
        self.name = name

    def _ensure(self, length: int) -> None:
        have = len(self._cache)
        if have >= length:
            return
        target = max(length, 2 * have, 64)
        try:
            chunk = self._producer(have, target)
        except PrecisionExhausted:
            if target == length:
                raise
            chunk = self._producer(have, length)
        self._cache.extend(chunk)

    def symbol_at(self, n: int) -> int:
        offset = n - self.index_base
        if offset < 0:
            raise IndexError(f"index {n} below index base {self.index_base}")
        self._ensure(offset + 1)
        return self._cache[offset]

    def prefix(self, length: int) -> FiniteWord:
        self._ensure(length)
        return FiniteWord(tuple(self._cache[:length]), self.alphabet_size)

    def recoded(self, mapping: Sequence[int], alphabet_size: int | None = None) -> InfiniteWordStream:
        """Apply a letter-to-letter coding."""
        size = alphabet_size or max(2, max(mapping) + 1)

        def produce(start, stop):
            self._ensure(stop)
            return [mapping[s] for s in self._cache[start:stop]]

        return InfiniteWordStream(produce, size, self.index_base, self.name)


def stream_from_iterable(symbols: Iterable[int], alphabet_size: int, name: str = "") -> InfiniteWordStream:
    """Wrap a (possibly infinite) iterator as a stream."""
    it = iter(symbols)
    seen: list[int] = []

    def produce(start, stop):
        while len(seen) < stop:
            try:
                seen.append(next(it))
            except StopIteration:
                raise PrecisionExhausted(f"stream {name!r} ends after {len(seen)} symbols") from None
        return seen[start:stop]

    return InfiniteWordStream(produce, alphabet_size, 0, name)
