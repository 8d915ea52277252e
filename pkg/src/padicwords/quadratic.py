"""Exact arithmetic in Q(sqrt d) and certified floors of affine functions of a slope.

Two slope representations are supported:

* :class:`QuadraticNumber` -- an exact element (a + b*sqrt(d)) / c; every floor
  is computed exactly with integer square roots.
* :class:`CFPrefix` -- an irrational known only through the first partial
  quotients of its continued fraction.  The slope lies in an open interval
  between two rationals, and a floor is returned only when it is the same for
  every point of that interval; otherwise :class:`PrecisionExhausted` is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

from .errors import PrecisionExhausted


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (f, r) with d = f*f*r and r free of small square factors."""
    f = 1
    r = d
    p = 2
    while p * p <= r and p < 10_000:
        while r % (p * p) == 0:
            r //= p * p
            f *= p
        p += 1
    return f, r


@dataclass(frozen=True)
class QuadraticNumber:
    """(a + b*sqrt(d)) / c in lowest terms, with c > 0 and d > 1 not a perfect square.

    A number with b == 0 is rational; d is kept so it can mix with others of the
    same field.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if c == 0:
            raise ValueError("denominator must be nonzero")
        if d < 2 or isqrt(d) ** 2 == d:
            raise ValueError(f"d={d} must be a positive non-square")
        f, d = _squarefree_split(d)
        b *= f
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, x, d: int) -> QuadraticNumber:
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError("cannot mix different quadratic fields")
            if other.d != self.d:
                return QuadraticNumber(other.a, 0, other.c, self.d) if other.b == 0 else other
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticNumber.rational(other, self.d)
        return NotImplemented

    def _field(self, other: QuadraticNumber) -> int:
        return self.d if self.b != 0 or other.b == 0 else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c,
                               self.c * o.c, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._field(o)
        return QuadraticNumber(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a,
                               self.c * o.c, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticNumber(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __floor__(self) -> int:
        if self.b >= 0:
            irr = isqrt(self.b * self.b * self.d)
        else:
            root = isqrt(self.b * self.b * self.d)
            irr = -root if root * root == self.b * self.b * self.d else -root - 1
        return (self.a + irr) // self.c

    def __ceil__(self) -> int:
        return -(-self).__floor__()

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        # sign of a + b sqrt d
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        return (1 if self.a > 0 else -1) if lhs > rhs else (1 if self.b > 0 else -1)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return (self.a + self.b * self.d ** 0.5) / self.c

    def __str__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.d}))/{self.c}"

    def continued_fraction(self) -> tuple[list[int], list[int]]:
        """Exact eventually periodic expansion ``(preperiod, period)``."""
        if self.b == 0:
            raise ValueError("rational numbers have finite expansions")
        # normalise to (P + sqrt D) / Q with Q | D - P^2
        sgn = 1 if self.b > 0 else -1
        D = self.b * self.b * self.d
        P, Q = sgn * self.a, sgn * self.c
        if (D - P * P) % Q:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        terms: list[int] = []
        seen: dict[tuple[int, int], int] = {}
        r = isqrt(D)
        while (P, Q) not in seen:
            seen[(P, Q)] = len(terms)
            # floor((P + sqrt D) / Q); sqrt D is irrational
            a = (P + r) // Q if Q > 0 else (-P - r - 1) // -Q
            terms.append(a)
            P = a * Q - P
            Q = (D - P * P) // Q
        start = seen[(P, Q)]
        return terms[:start], terms[start:]

    def partial_quotients(self, count: int) -> list[int]:
        pre, per = self.continued_fraction()
        out = list(pre)
        while len(out) < count:
            out.extend(per)
        return out[:count]


def quadratic_from_list(coeffs) -> QuadraticNumber:
    a, b, c, d = (int(x) for x in coeffs)
    return QuadraticNumber(a, b, c, d)


@dataclass(frozen=True)
class CFPrefix:
    """An irrational number known by the partial quotients [a0; a1, ..., am].

    The number lies strictly between the last convergent p_m/q_m and the
    mediant (p_m + p_{m-1}) / (q_m + q_{m-1}).
    """

    quotients: tuple[int, ...]

    def __post_init__(self):
        q = tuple(int(x) for x in self.quotients)
        if len(q) < 2:
            raise ValueError("need at least two partial quotients")
        if any(x < 1 for x in q[1:]):
            raise ValueError("partial quotients after the first must be positive")
        object.__setattr__(self, "quotients", q)

    def convergents(self) -> list[Fraction]:
        p0, q0, p1, q1 = 1, 0, self.quotients[0], 1
        out = [Fraction(p1, q1)]
        for a in self.quotients[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            out.append(Fraction(p1, q1))
        return out

    def enclosure(self) -> tuple[Fraction, Fraction]:
        """Open interval (lo, hi) containing every irrational with this prefix."""
        p0, q0, p1, q1 = 1, 0, self.quotients[0], 1
        for a in self.quotients[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        x, y = Fraction(p1, q1), Fraction(p1 + p0, q1 + q0)
        return (x, y) if x < y else (y, x)

    @property
    def depth(self) -> int:
        return len(self.quotients) - 1

    def __float__(self) -> float:
        lo, hi = self.enclosure()
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        head, *tail = self.quotients
        return f"[{head}; {', '.join(map(str, tail))}, ...]"


Slope = QuadraticNumber | CFPrefix


def _as_affine_value(theta: QuadraticNumber, n: int, rho):
    x = theta * n
    return x + rho


def floor_affine(theta: Slope, n: int, rho) -> int:
    """Exact floor(n*theta + rho); raises PrecisionExhausted when not determined."""
    if isinstance(theta, QuadraticNumber):
        return _as_affine_value(theta, n, rho).__floor__()
    rho = Fraction(rho)
    if n == 0:
        return rho.__floor__()
    lo, hi = theta.enclosure()
    x, y = lo * n + rho, hi * n + rho
    if x > y:
        x, y = y, x
    fx = x.__floor__()
    if fx + 1 < y:
        raise PrecisionExhausted(
            f"slope {theta} (depth {theta.depth}) does not determine floor({n}*theta + {rho}); "
            f"supply continued-fraction depth >= {theta.depth + 1}")
    return fx


def ceil_affine(theta: Slope, n: int, rho) -> int:
    """Exact ceil(n*theta + rho)."""
    if isinstance(theta, QuadraticNumber):
        return _as_affine_value(theta, n, rho).__ceil__()
    rho = Fraction(rho)
    if n == 0:
        return rho.__ceil__()
    # n*theta + rho is irrational here, never an integer
    return floor_affine(theta, n, rho) + 1


def slope_bounds(theta: Slope) -> tuple[Fraction, Fraction]:
    """Rational bounds lo < theta < hi."""
    if isinstance(theta, CFPrefix):
        return theta.enclosure()
    f = theta.__floor__()
    return Fraction(f), Fraction(f + 1)


def has_bounded_quotients(theta: Slope) -> bool | None:
    """True for quadratic irrationals (eventually periodic expansion); None when unknown."""
    if isinstance(theta, QuadraticNumber):
        return not theta.is_rational
    return None


def declared_unbounded(theta: Slope, run: int = 3) -> bool:
    """A CF prefix whose last ``run`` partial quotients strictly increase is treated as
    a truncation of an expansion with unbounded partial quotients."""
    if not isinstance(theta, CFPrefix):
        return False
    tail = theta.quotients[1:][-run:]
    return len(tail) == run and all(x < y for x, y in zip(tail, tail[1:]))
