"""p-adic integers given by digit streams, rational approximants, heights and exponent estimates.

Rationals are plain :class:`fractions.Fraction` values; the height of a/b in
lowest terms is max(|a|, b), the largest coefficient of b*X - a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import HypothesisViolation, RationalValueError
from .words import FiniteWord, InfiniteWordStream, _word

ExactRational = Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, isqrt(p) + 1))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def height(x) -> int:
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def valuation(x, p: int) -> int | None:
    """v_p(x); None for x = 0."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    a, b = x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def padic_abs(x, p: int) -> Fraction:
    """|x|_p = p^(-v_p(x)), with |0|_p = 0."""
    v = valuation(x, p)
    if v is None:
        return Fraction(0)
    return Fraction(1, p ** v) if v >= 0 else Fraction(p ** -v)


def rational_digits(x, p: int, k: int) -> list[int]:
    """First k p-adic digits of a rational whose denominator is prime to p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not a {p}-adic integer")
    mod = p ** k
    r = x.numerator * pow(x.denominator, -1, mod) % mod
    out = []
    for _ in range(k):
        r, d = divmod(r, p)
        out.append(d)
    return out


def _digits_value(digits: Sequence[int], p: int) -> int:
    total = 0
    for d in reversed(digits):
        total = total * p + d
    return total


def periodic_value(U, V, p: int) -> Fraction:
    """The rational with p-adic expansion U V V V ...

    For r = |U|, s = |V| the value has height at most p^(r + s).
    """
    U, V = _word(U, p), _word(V, p)
    if len(V) == 0:
        raise ValueError("V must be nonempty")
    for d in U.symbols + V.symbols:
        if not 0 <= d < p:
            raise ValueError(f"digit {d} invalid for p = {p}")
    r, s = len(U), len(V)
    head = _digits_value(U.symbols, p)
    period = _digits_value(V.symbols, p)
    # U + p^r * period / (1 - p^s)
    return Fraction(head) - Fraction(p ** r * period, p ** s - 1)


@dataclass(frozen=True)
class PadicDigits:
    """xi = sum a_n p^n for a digit stream over {0, ..., p-1}.

    ``exact`` may hold the rational value when xi is known to be rational.
    """

    p: int
    stream: InfiniteWordStream
    exact: Fraction | None = None

    def __post_init__(self):
        _check_prime(self.p)
        if self.stream.alphabet_size > self.p:
            raise ValueError(f"alphabet of size {self.stream.alphabet_size} does not fit digits mod {self.p}")

    @classmethod
    def from_rational(cls, x, p: int) -> PadicDigits:
        x = Fraction(x)

        def produce(start, stop):
            return rational_digits(x, p, stop)[start:stop]

        return cls(p, InfiniteWordStream(produce, p, 0, f"rational {x}"), x)

    def digits(self, k: int) -> tuple[int, ...]:
        return self.stream.prefix(k).symbols

    def residue(self, k: int) -> int:
        """sum_{n<k} a_n p^n, i.e. xi mod p^k."""
        return _digits_value(self.digits(k), self.p)


@dataclass(frozen=True)
class Distance:
    """|xi - alpha|_p = p^(-m); when ``exact`` is False only |xi - alpha|_p <= p^(-m) is known."""

    m: int | None
    exact: bool

    @property
    def infinite(self) -> bool:
        return self.m is None


def distance(xi: PadicDigits, alpha, precision: int) -> Distance:
    """Compare xi with alpha on the first ``precision`` digits."""
    alpha = Fraction(alpha)
    a, b = alpha.numerator, alpha.denominator
    p = xi.p
    if b % p == 0:
        raise ValueError(f"{alpha} is not a {p}-adic integer")
    if xi.exact is not None:
        v = valuation(xi.exact - alpha, p)
        return Distance(v, True)
    mod = p ** precision
    t = (b * xi.residue(precision) - a) % mod
    if t == 0:
        return Distance(precision, False)
    v = 0
    while t % p == 0:
        t //= p
        v += 1
    return Distance(v, True)


def liouville_lower_bound(alpha, beta, p: int | None = None) -> Fraction:
    """1 / (4 H(alpha) H(beta)); with p given, also confirm |alpha - beta|_p reaches it."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == beta:
        raise ValueError("alpha and beta must differ")
    bound = Fraction(1, 4 * height(alpha) * height(beta))
    if p is not None and padic_abs(alpha - beta, p) < bound:
        raise ArithmeticError(f"|{alpha} - {beta}|_{p} falls below {bound}")
    return bound


# ---------------------------------------------------------------------------
# lattice search for rational approximants


def _sup(v) -> int:
    return max(abs(v[0]), abs(v[1]))


def gauss_reduce(u, v):
    """Lagrange-Gauss reduction of a planar integer basis (Euclidean norm)."""
    def dot(x, y):
        return x[0] * y[0] + x[1] * y[1]

    if dot(u, u) > dot(v, v):
        u, v = v, u
    while True:
        nu = dot(u, u)
        # nearest integer to <u, v> / <u, u>
        q = (2 * dot(u, v) + nu) // (2 * nu)
        v = (v[0] - q * u[0], v[1] - q * u[1])
        if dot(v, v) >= nu:
            return u, v
        u, v = v, u


def _c1_candidates(e1, base, lo, hi):
    """Integer c1 in [lo, hi] near the minimisers of |c1*e1 + base|_inf."""
    pts = set()
    crit = []
    for k in range(2):
        if e1[k]:
            crit.append(Fraction(-base[k], e1[k]))
    for sgn in (1, -1):
        den = e1[0] - sgn * e1[1]
        if den:
            crit.append(Fraction(sgn * base[1] - base[0], den))
    for t in crit:
        f = t.__floor__()
        pts.update(range(f - 1, f + 3))
    return [c for c in pts if lo <= c <= hi]


def _c1_range(e1, base, S):
    """c1 with |c1*e1 + base|_inf <= S, as an integer interval (may be empty)."""
    lo, hi = None, None
    for k in range(2):
        if e1[k] == 0:
            if abs(base[k]) > S:
                return 1, 0
            continue
        a, b = -S - base[k], S - base[k]
        if e1[k] < 0:
            a, b = -b, -a
            div = -e1[k]
        else:
            div = e1[k]
        kl = -((-a) // div)
        kh = b // div
        lo = kl if lo is None else max(lo, kl)
        hi = kh if hi is None else min(hi, kh)
    return lo, hi


def min_height_approximants(residue: int, p: int, j: int) -> list[Fraction]:
    """All least-height rationals a/b with p not dividing b and b*residue = a mod p^j."""
    mod = p ** j
    e1, e2 = gauss_reduce((1, residue % mod), (0, mod))
    valid = [v for v in (e1, e2) if v[0] % p]
    S = min(_sup(v) for v in valid)
    # each basis coefficient is bounded through the angle of a reduced basis:
    # |v| >= |c_i| |e_i| sqrt(3)/2 and |v|_2 <= sqrt(2) |v|_inf
    found: set[tuple[int, int]] = set()
    n2 = e2[0] ** 2 + e2[1] ** 2
    # c2^2 * n2 * 3/4 <= 2 S^2
    c2max = isqrt(8 * S * S // (3 * n2)) + 1
    for c2 in range(-c2max, c2max + 1):
        base = (c2 * e2[0], c2 * e2[1])
        lo, hi = _c1_range(e1, base, S)
        if lo is None or lo > hi:
            continue
        if hi - lo <= 8 or 0 in e1:
            cands = range(lo, hi + 1)
        else:
            cands = _c1_candidates(e1, base, lo, hi)
        for c1 in cands:
            v = (c1 * e1[0] + base[0], c1 * e1[1] + base[1])
            if v[0] % p == 0:
                continue
            h = _sup(v)
            if h < S:
                S, found = h, set()
            if h == S:
                b, a = v
                if b < 0:
                    a, b = -a, -b
                found.add((a, b))
    return sorted({Fraction(a, b) for a, b in found}, key=lambda x: (x.denominator, x.numerator))


def exhaustive_approximants(residue: int, p: int, j: int, height_cap: int) -> list[Fraction]:
    """Brute-force counterpart of :func:`min_height_approximants` up to a height cap."""
    mod = p ** j
    for h in range(1, height_cap + 1):
        out = []
        for b in range(1, h + 1):
            if b % p == 0:
                continue
            for a in range(-h, h + 1):
                if max(abs(a), b) != h or gcd(a, b) != 1:
                    continue
                if (b * residue - a) % mod == 0:
                    out.append(Fraction(a, b))
        if out:
            return sorted(set(out), key=lambda x: (x.denominator, x.numerator))
    return []


def log_ceiling(H: int, p: int) -> int:
    """Smallest e >= 1 with p^e >= H."""
    e, q = 1, p
    while q < H:
        q *= p
        e += 1
    return e


def quality(m: int, H: int, p: int) -> Fraction:
    """A rational lower bound for m / log_p(H) - 1 (log_p(H) rounded up, at least 1)."""
    return Fraction(m, log_ceiling(H, p)) - 1


@dataclass(frozen=True)
class ApproximationRecord:
    p: int
    j: int
    alpha: Fraction
    H: int
    m: int | None
    m_exact: bool
    quality: Fraction | None

    def to_dict(self) -> dict:
        q = self.quality
        return {
            "p": self.p,
            "j": self.j,
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "H": self.H,
            "m": "inf" if self.m is None else self.m,
            "quality": "inf" if q is None else f"{q.numerator}/{q.denominator}",
        }


def make_record(xi: PadicDigits, alpha, j: int, precision: int) -> ApproximationRecord:
    alpha = Fraction(alpha)
    d = distance(xi, alpha, precision)
    H = height(alpha)
    q = None if d.m is None else quality(d.m, H, xi.p)
    return ApproximationRecord(xi.p, j, alpha, H, d.m, d.exact, q)


def best_rational_approximations(xi: PadicDigits, k: int, height_cap: int,
                                 levels: Iterable[int] | None = None) -> list[ApproximationRecord]:
    """Least-height rational congruent to xi modulo p^j for each level j, measured on k digits.

    Approximants above ``height_cap`` are dropped and repeats keep their first level.
    """
    if k < 1:
        raise ValueError("k must be positive")
    levels = range(1, k + 1) if levels is None else sorted(set(levels))
    p = xi.p
    full = xi.residue(k)
    seen: set[Fraction] = set()
    out = []
    for j in levels:
        if not 1 <= j <= k:
            raise ValueError(f"level {j} outside 1..{k}")
        for alpha in min_height_approximants(full % p ** j, p, j):
            if height(alpha) > height_cap or alpha in seen:
                continue
            seen.add(alpha)
            out.append(make_record(xi, alpha, j, k))
    return out


def chain_records(xi: PadicDigits, triples, precision: int) -> list[ApproximationRecord]:
    """Records for the periodic approximants U V V ... of a list of repetition triples."""
    out = []
    for t in triples:
        alpha = periodic_value(t.U, t.V, xi.p)
        out.append(make_record(xi, alpha, t.total_len, precision))
    return out


def w1_lower_estimate(records: Sequence[ApproximationRecord]) -> Fraction:
    """Largest recorded quality, never below 1 (every irrational has w_1 >= 1)."""
    best = Fraction(1)
    for r in records:
        if r.m is None:
            raise RationalValueError(f"xi equals {r.alpha}; exponents of rationals are not defined")
        best = max(best, r.quality)
    return best


# ---------------------------------------------------------------------------
# two-sided bound from a controlled approximation sequence


def _le_power(x: Fraction, base: Fraction, e: Fraction) -> bool:
    """x <= base^e exactly, for base > 0 and rational e."""
    x, base, e = Fraction(x), Fraction(base), Fraction(e)
    if x <= 0:
        return True
    u, v = e.numerator, e.denominator
    return x ** v <= base ** u


def _ge_power(x: Fraction, base: Fraction, e: Fraction) -> bool:
    x, base, e = Fraction(x), Fraction(base), Fraction(e)
    if x <= 0:
        return False
    u, v = e.numerator, e.denominator
    return x ** v >= base ** u


@dataclass(frozen=True)
class SandwichData:
    beta: Fraction
    dist: Fraction
    height: int


def w1_sandwich_check(data: Sequence[SandwichData], *, theta, rho, delta,
                      c0=1, c1=1, c2=1, c3=1) -> tuple[Fraction, Fraction]:
    """Return [delta, (1+rho)theta/delta - 1] after checking every hypothesis exactly.

    Requires beta_j < beta_{j+1} <= c0 beta_j^theta,
    c1/beta_j^(1+rho) <= |xi - alpha_j|_p <= c2/beta_j^(1+delta) and H(alpha_j) <= c3 beta_j.
    Raises HypothesisViolation naming the first failing index.
    """
    theta, rho, delta = Fraction(theta), Fraction(rho), Fraction(delta)
    c0, c1, c2, c3 = (Fraction(c) for c in (c0, c1, c2, c3))
    if not (theta >= 1 and rho >= 0 and delta > 0):
        raise HypothesisViolation("need theta >= 1, rho >= 0 and delta > 0")
    if min(c0, c1, c2, c3) <= 0:
        raise HypothesisViolation("constants must be positive")
    if len(data) < 2:
        raise HypothesisViolation("need at least two terms")
    for j, row in enumerate(data):
        beta, dist = Fraction(row.beta), Fraction(row.dist)
        if beta <= 1:
            raise HypothesisViolation(f"beta_{j} must exceed 1", j)
        if j + 1 < len(data):
            nxt = Fraction(data[j + 1].beta)
            if not beta < nxt:
                raise HypothesisViolation(f"beta_{j} < beta_{j + 1} fails", j)
            if not _le_power(nxt / c0, beta, theta):
                raise HypothesisViolation(f"beta_{j + 1} <= c0 beta_{j}^theta fails", j)
        # c1 / beta^(1+rho) <= dist  <=>  c1 / dist <= beta^(1+rho)
        if dist <= 0 or not _le_power(c1 / dist, beta, 1 + rho):
            raise HypothesisViolation(f"lower distance bound fails at {j}", j)
        # dist <= c2 / beta^(1+delta)  <=>  c2 / dist >= beta^(1+delta)
        if not _ge_power(c2 / dist, beta, 1 + delta):
            raise HypothesisViolation(f"upper distance bound fails at {j}", j)
        if not row.height <= c3 * beta:
            raise HypothesisViolation(f"H(alpha_{j}) <= c3 beta_{j} fails", j)
    return delta, (1 + rho) * theta / delta - 1
