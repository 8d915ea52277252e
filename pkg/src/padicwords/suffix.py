"""Suffix automaton and suffix array machinery for factor counting and repetitions."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def suffix_automaton(seq: Sequence[int]):
    """Build the suffix automaton of ``seq``.

    Returns ``(length, link)`` lists; transitions are discarded after
    construction since only the state lengths and suffix links are needed.
    """
    length = [0]
    link = [-1]
    trans: list[dict[int, int]] = [{}]
    last = 0
    for c in seq:
        cur = len(length)
        length.append(length[last] + 1)
        link.append(-1)
        trans.append({})
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(length)
                length.append(length[p] + 1)
                link.append(link[q])
                trans.append(dict(trans[q]))
                while p != -1 and trans[p].get(c) == q:
                    trans[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    return length, link


def factor_counts(seq: Sequence[int], n_max: int) -> np.ndarray:
    """counts[n] = number of distinct factors of length n, for n = 0..n_max.

    Each automaton state v stands for the factors with lengths in
    (len(link v), len v], so the profile is a difference array over states.
    """
    length, link = suffix_automaton(seq)
    diff = np.zeros(len(seq) + 2, dtype=np.int64)
    for v in range(1, len(length)):
        diff[length[link[v]] + 1] += 1
        diff[length[v] + 1] -= 1
    counts = np.cumsum(diff)[: n_max + 1]
    counts[0] = 1
    if len(counts) < n_max + 1:
        counts = np.concatenate([counts, np.zeros(n_max + 1 - len(counts), dtype=np.int64)])
    return counts


def suffix_array(seq: Sequence[int]) -> np.ndarray:
    """Suffix array by prefix doubling."""
    a = np.asarray(seq, dtype=np.int64)
    n = len(a)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = a.copy()
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r, s = rank[sa], second[sa]
        step = np.empty(n, dtype=bool)
        step[0] = True
        step[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        new = np.cumsum(step) - 1
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = new
        if new[-1] == n - 1 or k >= n:
            return sa.astype(np.int64)
        k *= 2


def lcp_array(seq: Sequence[int], sa: np.ndarray) -> list[int]:
    """Kasai: lcp[r] = lcp(suffix sa[r-1], suffix sa[r]); lcp[0] = 0."""
    n = len(seq)
    rank = [0] * n
    for r, i in enumerate(sa.tolist()):
        rank[i] = r
    lcp = [0] * n
    h = 0
    sa_l = sa.tolist()
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa_l[r - 1]
            while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def longest_previous_factor(seq: Sequence[int]) -> list[int]:
    """lpf[j] = max over i < j of lcp(seq[i:], seq[j:]) (occurrences may overlap)."""
    n = len(seq)
    if n == 0:
        return []
    sa = suffix_array(seq)
    lcp = lcp_array(seq, sa)
    return _lpf_stacks(sa.tolist(), lcp, n)


def _lpf_stacks(sa: list[int], lcp: list[int], n: int) -> list[int]:
    # Two passes over ranks with a stack of candidate earlier positions.  Each
    # entry keeps the lcp between its rank and the entry above it (the top keeps
    # the lcp to the current rank), so bridging and popping are O(1) amortised.
    lpf = [0] * n
    stack: list[tuple[int, int]] = []
    for r in range(n):
        pos = sa[r]
        if r > 0:
            stack = _decay(stack, lcp[r])
        while stack and stack[-1][0] > pos:
            carried = stack.pop()[1]
            if stack:
                stack[-1] = (stack[-1][0], min(stack[-1][1], carried))
        if stack:
            lpf[pos] = max(lpf[pos], stack[-1][1])
        stack.append((pos, n))
    stack = []
    for r in range(n - 1, -1, -1):
        pos = sa[r]
        if r < n - 1:
            stack = _decay(stack, lcp[r + 1])
        while stack and stack[-1][0] > pos:
            carried = stack.pop()[1]
            if stack:
                stack[-1] = (stack[-1][0], min(stack[-1][1], carried))
        if stack:
            lpf[pos] = max(lpf[pos], stack[-1][1])
        stack.append((pos, n))
    return lpf


def _decay(stack, bridge):
    if stack and stack[-1][1] > bridge:
        stack[-1] = (stack[-1][0], bridge)
    return stack
