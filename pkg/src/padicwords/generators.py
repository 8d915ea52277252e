"""Automatic, morphic and Sturmian sequences as lazy streams, plus structural checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PrecisionExhausted
from .quadratic import CFPrefix, QuadraticNumber, Slope, ceil_affine, floor_affine, slope_bounds
from .words import FiniteWord, InfiniteWordStream


def base_digits(n: int, k: int) -> list[int]:
    """Base-k digits of n, most significant first; empty for n = 0."""
    out = []
    while n:
        n, r = divmod(n, k)
        out.append(r)
    return out[::-1]


@dataclass(frozen=True)
class Automaton:
    """A deterministic k-automaton with output.

    ``transitions[q][d]`` is the state reached from q on digit d.
    """

    k: int
    transitions: tuple[tuple[int, ...], ...]
    initial: int
    output: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "output", tuple(self.output))
        if self.k < 2:
            raise ValueError("k must be at least 2")
        n = len(self.transitions)
        if n == 0 or len(self.output) != n:
            raise ValueError("need one transition row and one output per state")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.transitions:
            if len(row) != self.k or any(not 0 <= q < n for q in row):
                raise ValueError("transition table must be total over states x digits")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def run(self, digits: Sequence[int], state: int | None = None) -> int:
        q = self.initial if state is None else state
        for d in digits:
            q = self.transitions[q][d]
        return q

    def relabeled(self, perm: Sequence[int]) -> Automaton:
        """Same automaton with state q renamed perm[q]."""
        n = self.state_count
        rows = [None] * n
        out = [None] * n
        for q in range(n):
            rows[perm[q]] = tuple(perm[t] for t in self.transitions[q])
            out[perm[q]] = self.output[q]
        return Automaton(self.k, tuple(rows), perm[self.initial], tuple(out))


def automaton_eval(A: Automaton, n: int) -> int:
    """a_n = output(delta(q0, W_n)), reading base-k digits most significant first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return A.output[A.run(base_digits(n, A.k))]


def automaton_stream(A: Automaton, name: str = "") -> InfiniteWordStream:
    size = max(2, max(A.output) + 1)

    def produce(start, stop):
        return [automaton_eval(A, n) for n in range(start, stop)]

    return InfiniteWordStream(produce, size, 0, name)


def kernel_size(A: Automaton, max_size: int = 1000) -> int | None:
    """Number of distinct sequences (a_{k^i m + j})_{m>=0}; None if more than ``max_size``.

    For a digit block x of length i, the kernel element with j = val(x) is
    a_j at m = 0 and output(delta(delta(q0, W_m), x)) for m >= 1.  As m >= 1
    ranges, delta(q0, W_m) runs over exactly the set R of states reachable by a
    word with nonzero leading digit.  So two kernel elements coincide iff they
    agree at m = 0 and output∘delta(., x) agrees on R.  The blocks x are
    explored by BFS over (delta(., x), delta(q0, strip(x)), x == 0...0).
    """
    k, T, out = A.k, A.transitions, A.output
    n = A.state_count
    reach = set()
    todo = [T[A.initial][d] for d in range(1, k)]
    while todo:
        q = todo.pop()
        if q in reach:
            continue
        reach.add(q)
        todo.extend(T[q])
    R = sorted(reach)

    start = (tuple(range(n)), A.initial, True)
    seen = {start}
    queue = deque([start])
    keys = set()
    while queue:
        g, h, zero = queue.popleft()
        keys.add((out[h], tuple(out[g[r]] for r in R)))
        if len(keys) > max_size:
            return None
        for d in range(k):
            g2 = tuple(T[q][d] for q in g)
            if zero:
                nxt = (g2, A.initial, True) if d == 0 else (g2, T[A.initial][d], False)
            else:
                nxt = (g2, T[h][d], False)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(keys)


@dataclass(frozen=True)
class Morphism:
    """Letter images of a morphism; ``images[a]`` is the word for letter a."""

    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        imgs = tuple(tuple(int(s) for s in w) for w in self.images)
        if not imgs:
            raise ValueError("morphism needs at least one letter")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_strings(cls, images: Sequence[str]) -> Morphism:
        return cls(tuple(tuple(int(c, 36) for c in w) for w in images))

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    @property
    def width(self) -> int:
        return max(len(w) for w in self.images)

    def uniform_length(self) -> int | None:
        lengths = {len(w) for w in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    def apply(self, word: Sequence[int]) -> list[int]:
        out: list[int] = []
        for a in word:
            out.extend(self.images[a])
        return out

    def incidence_matrix(self) -> np.ndarray:
        """M[a][b] = number of occurrences of a in sigma(b)."""
        size = max(self.alphabet_size, 1 + max((s for w in self.images for s in w), default=0))
        M = np.zeros((size, self.alphabet_size), dtype=np.int64)
        for b, w in enumerate(self.images):
            for a in w:
                M[a, b] += 1
        return M


def is_primitive(sigma: Morphism, max_exponent: int | None = None) -> bool:
    """True iff some power M^n (n <= max_exponent) of the incidence matrix is positive.

    The default exponent bound (b - 1)^2 + 1 makes the answer exact.
    """
    M = sigma.incidence_matrix()
    if M.shape[0] != M.shape[1]:
        raise ValueError("primitivity needs an endomorphism")
    b = M.shape[0]
    if max_exponent is None:
        max_exponent = (b - 1) ** 2 + 1
    M = M > 0
    P = M.copy()
    for _ in range(max_exponent):
        if P.all():
            return True
        P = (P.astype(np.int64) @ M.astype(np.int64)) > 0
    return False


@dataclass(frozen=True)
class MorphicSystem:
    """sigma prolongable on ``seed``, followed by a letter-to-letter coding."""

    sigma: Morphism
    coding: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coding", tuple(self.coding))
        if len(self.coding) != self.sigma.alphabet_size:
            raise ValueError("coding must give one symbol per letter")

    def check_prolongable(self) -> None:
        img = self.sigma.images[self.seed]
        if len(img) < 2 or img[0] != self.seed:
            raise ValueError(f"sigma is not prolongable on {self.seed}: sigma(a) must be a W with W nonempty")
        if any(len(w) == 0 for w in self.sigma.images):
            raise ValueError("erasing morphisms are not supported")

    def fixed_point_prefix(self, length: int) -> list[int]:
        self.check_prolongable()
        u = list(self.sigma.images[self.seed])
        i = 1
        while len(u) < length:
            u.extend(self.sigma.images[u[i]])
            i += 1
        return u[:length]


def morphic_stream(sys: MorphicSystem, name: str = "") -> InfiniteWordStream:
    """tau(lim sigma^n(a)), generated lazily from u = sigma(u)."""
    sys.check_prolongable()
    images, coding = sys.sigma.images, sys.coding
    u = list(images[sys.seed])
    pos = [1]

    def produce(start, stop):
        while len(u) < stop:
            u.extend(images[u[pos[0]]])
            pos[0] += 1
        return [coding[a] for a in u[start:stop]]

    return InfiniteWordStream(produce, max(2, max(coding) + 1), 0, name)


def automaton_from_uniform_morphism(sys: MorphicSystem) -> Automaton:
    """Cobham's construction: states are letters, delta(b, d) = sigma(b)[d]."""
    k = sys.sigma.uniform_length()
    if k is None or k < 2:
        raise ValueError("morphism must be k-uniform with k >= 2")
    sys.check_prolongable()
    return Automaton(k, sys.sigma.images, sys.seed, sys.coding)


@dataclass(frozen=True)
class SturmianParams:
    """Slope 0 < theta < 1, intercept rho, floor or ceiling variant, and a 2-letter coding."""

    theta: Slope
    rho: Fraction | QuadraticNumber = Fraction(0)
    variant: str = "floor"
    coding: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.variant not in ("floor", "ceiling"):
            raise ValueError("variant must be 'floor' or 'ceiling'")
        if len(self.coding) != 2 or self.coding[0] == self.coding[1]:
            raise ValueError("coding must map 0 and 1 to distinct symbols")
        object.__setattr__(self, "coding", tuple(self.coding))
        if not isinstance(self.rho, QuadraticNumber):
            object.__setattr__(self, "rho", Fraction(self.rho))
        elif isinstance(self.theta, CFPrefix):
            raise ValueError("a continued-fraction slope needs a rational intercept")
        if isinstance(self.theta, QuadraticNumber) and self.theta.is_rational:
            raise ValueError("slope must be irrational")
        lo, hi = slope_bounds(self.theta)
        if isinstance(self.theta, QuadraticNumber):
            if not (self.theta > 0 and self.theta < 1):
                raise ValueError("slope must lie in (0, 1)")
        elif lo < 0 or hi > 1:
            raise ValueError("slope must lie in (0, 1)")


def sturmian_raw(theta: Slope, rho, n: int, variant: str = "floor") -> int:
    """s_{n,theta,rho} (floor) or s'_{n,theta,rho} (ceiling), exactly."""
    f = floor_affine if variant == "floor" else ceil_affine
    return f(theta, n + 1, rho) - f(theta, n, rho)


def sturmian_stream(params: SturmianParams, name: str = "") -> InfiniteWordStream:
    """Stream indexed from 1: symbol_at(n) = coding(s_n) or coding(s'_n)."""
    f = floor_affine if params.variant == "floor" else ceil_affine
    theta, rho, coding = params.theta, params.rho, params.coding

    def produce(start, stop):
        # offset i is index n = i + 1
        vals = [f(theta, n, rho) for n in range(start + 1, stop + 2)]
        return [coding[vals[i + 1] - vals[i]] for i in range(stop - start)]

    return InfiniteWordStream(produce, max(2, max(coding) + 1), 1, name)


def _check_indicator_slope(theta: Slope) -> None:
    lo, _ = slope_bounds(theta)
    if isinstance(theta, QuadraticNumber):
        if theta.is_rational:
            raise ValueError("slope must be irrational")
        if not theta > 1:
            raise ValueError("indicator slope must exceed 1")
    elif lo < 1:
        raise ValueError("indicator slope must exceed 1")


def indicator_stream(theta: Slope, rho, k_min: int | None = None, name: str = ""):
    """The pair (t, t') indexed from 1.

    t_n = 1 iff n = floor(k*theta + rho) for some integer k (k >= k_min when
    given); t'_n likewise with the ceiling.  Values are found by enumerating k
    and evaluating each floor exactly.
    """
    _check_indicator_slope(theta)

    def make(f):
        def produce(start, stop):
            lo_n, hi_n = start + 1, stop + 1  # indices lo_n .. hi_n - 1
            k = _k_start(theta, rho, f, lo_n)
            if k_min is not None:
                k = max(k, k_min)
            out = [0] * (stop - start)
            while True:
                v = f(theta, k, rho)
                if v >= hi_n:
                    break
                if v >= lo_n:
                    out[v - lo_n] = 1
                k += 1
            return out
        return InfiniteWordStream(produce, 2, 1, name)

    return make(floor_affine), make(ceil_affine)


def _k_start(theta: Slope, rho, f, n: int) -> int:
    """Some integer k with f(k*theta + rho) < n; found from a float guess, then checked exactly."""
    k = int((n - float(rho)) / float(theta)) - 1
    step = 1
    while f(theta, k, rho) >= n:
        k -= step
        step *= 2
    return k


def st_identity_mismatch(theta: QuadraticNumber, rho, N: int, literal: bool = False):
    """First index n <= N where the Beatty/Sturmian correspondence fails, or None.

    Checks t_{theta,rho} = s'_{1/theta, -rho/theta} and
    t'_{theta,rho} = s_{1/theta, -(rho+1)/theta} on n = 1..N.  With
    ``literal=True`` the first identity uses the intercept -(rho+1)/theta
    instead, which is off by one index.
    """
    if not isinstance(theta, QuadraticNumber):
        raise TypeError("exact identity checks need a quadratic slope")
    t, tp = indicator_stream(theta, rho)
    inv = theta.inverse()
    rho_q = rho if isinstance(rho, QuadraticNumber) else QuadraticNumber.rational(rho, theta.d)
    rho_t = -(rho_q + 1) * inv if literal else -rho_q * inv
    rho_tp = -(rho_q + 1) * inv
    tt, ttp = t.prefix(N), tp.prefix(N)
    for n in range(1, N + 1):
        if tt[n - 1] != sturmian_raw(inv, rho_t, n, "ceiling"):
            return ("t", n)
        if ttp[n - 1] != sturmian_raw(inv, rho_tp, n, "floor"):
            return ("t'", n)
    return None


def verify_st_identity(theta: QuadraticNumber, rho, N: int) -> bool:
    """True iff both indicator/Sturmian identities hold for indices 1..N."""
    return st_identity_mismatch(theta, rho, N) is None


def prefix_word(stream: InfiniteWordStream, length: int) -> FiniteWord:
    try:
        return stream.prefix(length)
    except PrecisionExhausted as exc:
        raise PrecisionExhausted(f"{stream.name or 'stream'}: {exc}") from exc
