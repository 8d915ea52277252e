import random
from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, settings, strategies as st

from oracles import kernel_by_prefix
from padicwords.errors import PrecisionExhausted
from padicwords.generators import (Automaton, MorphicSystem, Morphism, SturmianParams, automaton_eval,
                                   automaton_from_uniform_morphism, automaton_stream, indicator_stream,
                                   is_primitive, kernel_size, morphic_stream, st_identity_mismatch,
                                   sturmian_raw, sturmian_stream, verify_st_identity)
from padicwords.quadratic import CFPrefix, QuadraticNumber

TM = Automaton(2, ((0, 1), (1, 0)), 0, (0, 1))
PD = Automaton(2, ((0, 1), (0, 0)), 0, (0, 1))
CONST = Automaton(2, ((0, 0),), 0, (0,))
GOLDEN = QuadraticNumber(-1, 1, 2, 5)
PHI = QuadraticNumber(1, 1, 2, 5)


def tm_system():
    return MorphicSystem(Morphism.from_strings(["01", "10"]), (0, 1))


def test_thue_morse_automaton_is_bit_parity():
    assert automaton_eval(TM, 0) == 0
    assert automaton_eval(TM, 3) == 0
    assert automaton_eval(TM, 7) == 1
    assert all(automaton_eval(TM, n) == bin(n).count("1") % 2 for n in range(1 << 16))


@pytest.mark.parametrize("images", [["01", "10"], ["01", "00"]])
def test_uniform_morphic_equals_cobham_automaton(images):
    sys = MorphicSystem(Morphism.from_strings(images), (0, 1))
    A = automaton_from_uniform_morphism(sys)
    N = 1 << 14
    assert list(morphic_stream(sys).prefix(N)) == list(automaton_stream(A).prefix(N))


@pytest.mark.parametrize("A, size", [(CONST, 1), (TM, 2), (PD, 4)])
def test_kernel_sizes(A, size):
    assert kernel_size(A) == size
    assert kernel_by_prefix(lambda n: automaton_eval(A, n), 2, 6, 256) == size


@given(st.data())
@settings(max_examples=40)
def test_kernel_size_ignores_state_names(data):
    n = data.draw(st.integers(1, 5))
    k = data.draw(st.integers(2, 3))
    rows = tuple(tuple(data.draw(st.integers(0, n - 1)) for _ in range(k)) for _ in range(n))
    out = tuple(data.draw(st.integers(0, 1)) for _ in range(n))
    A = Automaton(k, rows, 0, out)
    perm = data.draw(st.permutations(range(n)))
    assert kernel_size(A) == kernel_size(A.relabeled(perm))


def test_kernel_size_cap():
    assert kernel_size(TM, max_size=1) is None


def test_primitivity():
    assert is_primitive(Morphism.from_strings(["01", "10"]))
    assert is_primitive(Morphism.from_strings(["01", "0"]))
    assert not is_primitive(Morphism.from_strings(["01", "1"]))


def test_morphic_prefixes():
    assert str(morphic_stream(tm_system()).prefix(8)) == "01101001"
    fib = MorphicSystem(Morphism.from_strings(["01", "0"]), (0, 1))
    assert str(morphic_stream(fib).prefix(8)) == "01001010"
    coded = MorphicSystem(Morphism.from_strings(["01", "10"]), (1, 0))
    assert morphic_stream(coded).symbol_at(0) == 1


def test_non_prolongable_rejected():
    with pytest.raises(ValueError):
        morphic_stream(MorphicSystem(Morphism.from_strings(["10", "01"]), (0, 1)))


def test_golden_sturmian_prefix():
    s = sturmian_stream(SturmianParams(GOLDEN))
    assert str(s.prefix(10)) == "1011010110"
    assert s.index_base == 1 and s.symbol_at(1) == 1


@given(st.sampled_from([GOLDEN, QuadraticNumber(-1, 1, 1, 2), QuadraticNumber(-3, 1, 2, 13)]),
       st.fractions(min_value=-3, max_value=3, max_denominator=9), st.integers(1, 400))
def test_sturmian_telescoping_and_variants(theta, rho, N):
    floor_word = [sturmian_raw(theta, rho, n) for n in range(1, N + 1)]
    ceil_word = [sturmian_raw(theta, rho, n, "ceiling") for n in range(1, N + 1)]
    assert set(floor_word) <= {0, 1}
    assert sum(floor_word) == floor(theta * (N + 1) + rho) - floor(theta + rho)
    # n*theta + rho is never an integer for n >= 1
    assert floor_word == ceil_word


def test_sturmian_params_validation():
    with pytest.raises(ValueError):
        SturmianParams(PHI)
    with pytest.raises(ValueError):
        SturmianParams(GOLDEN, coding=(1, 1))
    with pytest.raises(ValueError):
        SturmianParams(CFPrefix((0, 2, 3)), rho=GOLDEN)


def test_cf_sturmian_horizon_error_names_depth():
    s = sturmian_stream(SturmianParams(CFPrefix((0, 1, 2))))
    with pytest.raises(PrecisionExhausted, match="depth >= 3"):
        s.prefix(200)


def test_indicator_golden_beatty():
    t, _ = indicator_stream(PHI, 0)
    ones = [n for n, b in enumerate(t.prefix(12).symbols, start=1) if b]
    assert ones == [1, 3, 4, 6, 8, 9, 11, 12]


@given(st.sampled_from([PHI, QuadraticNumber(0, 1, 1, 7), QuadraticNumber(5, 1, 3, 3)]),
       st.fractions(min_value=-2, max_value=2, max_denominator=7), st.integers(10, 2000))
def test_indicator_density(theta, rho, N):
    t, _ = indicator_stream(theta, rho)
    ones = sum(t.prefix(N).symbols)
    assert abs(ones - float((N - rho) / theta)) <= 2


def test_indicator_rejects_small_or_rational_slopes():
    with pytest.raises(ValueError):
        indicator_stream(GOLDEN, 0)


@pytest.mark.parametrize("theta, rho", [(PHI, 0), (QuadraticNumber(1, 1, 1, 2), Fraction(1, 2)),
                                        (QuadraticNumber(0, 1, 1, 5), Fraction(-3, 4))])
def test_beatty_sturmian_correspondence(theta, rho):
    assert verify_st_identity(theta, rho, 1000)


def test_literal_intercept_is_off_by_one():
    # with intercept -(rho+1)/theta the first identity holds only after a shift
    assert st_identity_mismatch(PHI, 0, 50, literal=True) == ("t", 2)
    t, _ = indicator_stream(PHI, 0)
    inv = PHI.inverse()
    shifted = [sturmian_raw(inv, -1 * inv, n, "ceiling") for n in range(2, 60)]
    assert shifted == list(t.prefix(58).symbols)


def test_quadratic_intercepts_allowed():
    rho = QuadraticNumber(1, 1, 4, 5)
    assert verify_st_identity(PHI, rho, 500)
