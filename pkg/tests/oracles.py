"""Slow, obviously-correct reference implementations used only by the tests."""

from fractions import Fraction
from math import gcd


def naive_factor_count(s, n):
    return len({tuple(s[i:i + n]) for i in range(len(s) - n + 1)})


def naive_lpf(s):
    n = len(s)
    out = []
    for j in range(n):
        best = 0
        for i in range(j):
            k = 0
            while j + k < n and s[i + k] == s[j + k]:
                k += 1
            best = max(best, k)
        out.append(best)
    return out


def naive_occurrences(w, a):
    return [i for i in range(len(a) - len(w) + 1) if list(a[i:i + len(w)]) == list(w)]


def exhaustive_repetition(s):
    """(ratio, j, i) of the best U V^w prefix: |U| = i, |UV| = j, V^w extended greedily."""
    L = len(s)
    best = None
    for j in range(1, L):
        for i in range(j):
            per = j - i
            t = j
            while t < L and s[t] == s[t - per]:
                t += 1
            key = (Fraction(t, j), -j, -i)
            if best is None or key > best:
                best = key
    r, j, i = best
    return r, -j, -i


def exhaustive_ultimate_period(s, max_pre, max_per):
    n = len(s)
    for u in range(0, max_pre + 1):
        for v in range(1, max_per + 1):
            if n - u < 2 * v:
                continue
            if all(s[t] == s[t + v] for t in range(u, n - v)):
                return u, v
    return None


def exhaustive_best(residue, p, j, cap):
    """Least-height a/b (p not dividing b) with b*residue = a mod p^j, heights up to cap."""
    mod = p ** j
    hits = []
    for b in range(1, cap + 1):
        if b % p == 0:
            continue
        for a in range(-cap, cap + 1):
            if gcd(a, b) == 1 and (b * residue - a) % mod == 0:
                hits.append(Fraction(a, b))
    if not hits:
        return None, []
    h = min(max(abs(x.numerator), x.denominator) for x in hits)
    return h, sorted(x for x in hits if max(abs(x.numerator), x.denominator) == h)


def kernel_by_prefix(seq_fn, k, depth, length):
    """Distinct kernel sequences (a_{k^i m + j}) for i <= depth, compared on ``length`` terms."""
    seen = set()
    for i in range(depth + 1):
        for j in range(k ** i):
            seen.add(tuple(seq_fn(k ** i * m + j) for m in range(length)))
    return len(seen)
