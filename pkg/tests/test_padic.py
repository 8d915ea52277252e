import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import exhaustive_best
from padicwords.classify import eq_last_bound
from padicwords.errors import HypothesisViolation, RationalValueError
from padicwords.padic import (PadicDigits, SandwichData, best_rational_approximations, chain_records, distance,
                              gauss_reduce, height, liouville_lower_bound, min_height_approximants,
                              padic_abs, periodic_value, quality, rational_digits, valuation,
                              w1_lower_estimate, w1_sandwich_check)
from padicwords.repetition import find_repetition
from padicwords.specs import load_spec
from padicwords.words import InfiniteWordStream

primes = st.sampled_from([2, 3, 5, 7])
rationals = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 4)


def digit_stream(digits, p, tail=0):
    return InfiniteWordStream(lambda a, b: [digits[n] if n < len(digits) else tail for n in range(a, b)], p)


@st.composite
def periodic_parts(draw):
    p = draw(primes)
    U = draw(st.lists(st.integers(0, p - 1), max_size=10))
    V = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=10))
    return p, U, V


def test_periodic_value_examples():
    for p in (2, 3, 5, 7):
        assert periodic_value([], [p - 1], p) == -1
    assert periodic_value([], [1, 0], 2) == Fraction(-1, 3)
    with pytest.raises(ValueError):
        periodic_value([], [2], 2)


@given(periodic_parts())
def test_periodic_value_round_trip_and_height(parts):
    p, U, V = parts
    alpha = periodic_value(U, V, p)
    n = len(U) + 3 * len(V)
    assert rational_digits(alpha, p, n) == (U + V * 3)[:n]
    assert height(alpha) <= p ** (len(U) + len(V))


@given(rationals.filter(lambda x: x.denominator % 5), st.integers(1, 30))
def test_rational_digits_reassemble(x, k):
    d = rational_digits(x, 5, k)
    v = valuation(sum(a * 5 ** i for i, a in enumerate(d)) - x, 5)
    assert v is None or v >= k


def test_absolute_value_examples():
    assert padic_abs(3, 3) == Fraction(1, 3)
    assert padic_abs(Fraction(1, 6), 5) == 1
    assert padic_abs(0, 7) == 0
    assert padic_abs(Fraction(1, 9), 3) == 9


@given(rationals, rationals, primes)
def test_ultrametric(x, y, p):
    s = padic_abs(x + y, p)
    assert s <= max(padic_abs(x, p), padic_abs(y, p))
    if padic_abs(x, p) != padic_abs(y, p):
        assert s == max(padic_abs(x, p), padic_abs(y, p))


def test_distance_examples():
    xi = PadicDigits(3, digit_stream([2, 2, 2, 1], 3))
    d = distance(xi, -1, 20)
    assert d.exact and d.m == 3
    head = [1, 0, 2, 2, 1, 0]
    xi = PadicDigits(3, digit_stream(head, 3, tail=1))
    d = distance(xi, sum(a * 3 ** i for i, a in enumerate(head)), 30)
    assert d.m >= len(head)
    with pytest.raises(ValueError):
        distance(xi, Fraction(1, 3), 10)


def test_distance_reports_bounds_when_digits_agree():
    xi = PadicDigits(2, digit_stream([], 2, tail=1))
    d = distance(xi, -1, 40)
    assert (d.m, d.exact) == (40, False)
    exact = PadicDigits.from_rational(-1, 2)
    assert distance(exact, -1, 40).infinite


@given(periodic_parts(), st.fractions(min_value=1, max_value=5, max_denominator=7),
       st.lists(st.integers(0, 1), max_size=8))
def test_distance_to_periodic_approximant(parts, w, junk):
    p, U, V = parts
    from padicwords.words import FiniteWord, fractional_power
    prefix = list(U) + list(fractional_power(FiniteWord(tuple(V), p), w).symbols)
    xi = PadicDigits(p, digit_stream(prefix + junk, p, tail=0))
    d = distance(xi, periodic_value(U, V, p), len(prefix) + len(junk) + 5)
    assert d.m >= len(prefix)


def test_liouville_examples():
    assert liouville_lower_bound(Fraction(1, 2), Fraction(1, 3), 5) == Fraction(1, 24)
    assert padic_abs(Fraction(1, 6), 5) >= Fraction(1, 24)
    for p in (2, 3, 5):
        b = liouville_lower_bound(0, Fraction(1, p), p)
        assert padic_abs(Fraction(1, p), p) == p >= b == Fraction(1, 4 * p)
    with pytest.raises(ValueError):
        liouville_lower_bound(Fraction(2, 3), Fraction(4, 6))


@given(rationals, rationals, primes)
def test_liouville_never_violated(a, b, p):
    if a != b:
        assert padic_abs(a - b, p) >= liouville_lower_bound(a, b)


def test_gauss_reduction_is_reduced():
    rng = random.Random(3)
    for _ in range(200):
        mod = 3 ** rng.randint(1, 30)
        u, v = gauss_reduce((1, rng.randrange(mod)), (0, mod))
        nu, nv = u[0] ** 2 + u[1] ** 2, v[0] ** 2 + v[1] ** 2
        dot = u[0] * v[0] + u[1] * v[1]
        assert nu <= nv and 2 * abs(dot) <= nu
        assert abs(u[0] * v[1] - u[1] * v[0]) == mod


@settings(max_examples=150)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 12), st.integers(0, 10 ** 9))
def test_lattice_matches_exhaustive(p, j, seed):
    residue = seed % p ** j
    found = min_height_approximants(residue, p, j)
    h, best = exhaustive_best(residue, p, j, 50)
    H = height(found[0])
    if H <= 50:
        assert (H, sorted(found)) == (h, best)
    else:
        assert h is None


def test_approximations_of_minus_one():
    recs = best_rational_approximations(PadicDigits.from_rational(-1, 3), 10, 100)
    assert [(r.alpha, r.H, r.m) for r in recs] == [(-1, 1, None)]
    with pytest.raises(RationalValueError):
        w1_lower_estimate(recs)


def test_records_serialise():
    xi = PadicDigits(2, load_spec("thue-morse").stream())
    recs = best_rational_approximations(xi, 12, 10 ** 6)
    d = recs[0].to_dict()
    assert set(d) == {"p", "j", "alpha", "H", "m", "quality"}
    assert all(r.quality == quality(r.m, r.H, 2) for r in recs)


def test_w1_estimate_floor_and_chain():
    assert w1_lower_estimate([]) == 1
    s = load_spec("golden-sturmian").stream()
    xi = PadicDigits(2, s)
    triples = [find_repetition(s, n, 2) for n in (10, 40, 160)]
    recs = chain_records(xi, triples, 2000)
    est = w1_lower_estimate(recs)
    assert est >= max(Fraction(1), max(t.ratio for t in triples) - 1)


def geometric_data(p=2, terms=6):
    rows = []
    for j in range(terms):
        beta = Fraction(p ** (2 ** (j + 1)))
        rows.append(SandwichData(beta, 1 / beta ** 2, int(beta)))
    return rows


def test_sandwich_on_geometric_data():
    lo, hi = w1_sandwich_check(geometric_data(), theta=2, rho=1, delta=1)
    assert (lo, hi) == (1, 3)


def test_sandwich_names_failing_index():
    rows = geometric_data()
    rows[3] = SandwichData(rows[2].beta, rows[3].dist, rows[3].height)
    with pytest.raises(HypothesisViolation) as err:
        w1_sandwich_check(rows, theta=2, rho=1, delta=1)
    assert err.value.index == 2
    rows = geometric_data()
    rows[4] = SandwichData(rows[4].beta, rows[4].dist, int(rows[4].beta) * 2)
    with pytest.raises(HypothesisViolation) as err:
        w1_sandwich_check(rows, theta=2, rho=1, delta=1)
    assert err.value.index == 4
    with pytest.raises(HypothesisViolation):
        w1_sandwich_check(geometric_data(), theta=2, rho=Fraction(1, 2), delta=1)


def test_sandwich_on_sturmian_repetition_chain():
    kappa, p = 2, 2
    s = load_spec("golden-sturmian").stream()
    xi = PadicDigits(p, s)
    rows, last = [], 0
    for n in (4, 16, 64, 256, 1024):
        t = find_repetition(s, n, kappa)
        r = len(t.U) + len(t.V)
        if r <= last:
            continue
        last = r
        alpha = periodic_value(t.U, t.V, p)
        d = distance(xi, alpha, 20000)
        assert d.exact
        rows.append((r, d.m, alpha))
    rho = max(Fraction(m, r) for r, m, _ in rows) - 1
    data = [SandwichData(Fraction(p ** r), Fraction(1, p ** m), height(a)) for r, m, a in rows]
    theta, delta = 4 * (kappa + 1) ** 2, Fraction(1, 4 * kappa + 2)
    lo, hi = w1_sandwich_check(data, theta=theta, rho=rho, delta=delta)
    assert lo == delta
    assert hi == eq_last_bound(kappa, 1 + rho)
