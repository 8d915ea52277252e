from fractions import Fraction

import pytest

from padicwords.classify import (Assertion, classify, eq_last_bound, family_info, independence_report,
                                 sanity_assertions, u1_evidence)
from padicwords.errors import RationalValueError
from padicwords.specs import load_spec, spec_from_dict

LADDER = (100, 316, 1000, 3162, 10000)
NAMES = ("thue-morse", "period-doubling", "fibonacci-word", "golden-sturmian", "unbounded-sturmian")


@pytest.fixture(scope="module")
def reports():
    return {name: classify(load_spec(name), 2, LADDER) for name in NAMES}


def test_predicted_classes(reports):
    expected = {"thue-morse": "S-or-T", "period-doubling": "S-or-T", "fibonacci-word": "S-or-T",
                "golden-sturmian": "S-or-T", "unbounded-sturmian": "U1"}
    assert {k: r.predicted for k, r in reports.items()} == expected
    assert reports["unbounded-sturmian"].u1_evidence
    assert not reports["golden-sturmian"].u1_evidence


def test_thue_morse_family_bound(reports):
    tm = reports["thue-morse"]
    assert tm.family.kappa_bound == 8 and tm.family.dio_upper == 4
    assert tm.bound_family == 44063 == eq_last_bound(8, 4)


def test_dio_values_are_frozen(reports):
    assert reports["thue-morse"].dio.bound == Fraction(5, 3)
    assert reports["golden-sturmian"].dio.bound == Fraction(2582, 987)
    assert reports["period-doubling"].dio.bound == Fraction(3071, 1536)
    assert reports["unbounded-sturmian"].dio.bound == Fraction(1000, 11)


def test_sanity_passes_on_bundled_specs(reports):
    for r in reports.values():
        checks = sanity_assertions(r)
        assert checks and all(a.passed for a in checks), [a for a in checks if not a.passed]


def test_sanity_flags_bad_estimate(reports):
    from copy import copy
    fake = copy(reports["golden-sturmian"])
    fake.w1 = Fraction(4, 5)
    failed = {a.name for a in sanity_assertions(fake) if not a.passed}
    assert "w1 >= 1" in failed and "w1 >= max(1, Dio - 1)" in failed
    empty = copy(fake)
    empty.records = []
    (only,) = sanity_assertions(empty)
    assert only.passed and "vacuous" in only.detail


def test_class_invariant_under_recoding(reports):
    spec = load_spec("thue-morse")
    swapped = classify(spec, 2, LADDER, stream=spec.stream().recoded([1, 0]))
    assert swapped.predicted == reports["thue-morse"].predicted
    assert swapped.dio.bound == reports["thue-morse"].dio.bound
    spec = load_spec("unbounded-sturmian")
    swapped = classify(spec, 2, LADDER, stream=spec.stream().recoded([1, 0]))
    assert swapped.predicted == "U1" and swapped.dio.bound == reports["unbounded-sturmian"].dio.bound


def test_report_is_deterministic(reports):
    again = classify(load_spec("fibonacci-word"), 2, LADDER)
    assert again.to_json() == reports["fibonacci-word"].to_json()


def test_report_json_shape(reports):
    d = reports["golden-sturmian"].to_dict()
    for key in ("spec_version", "spec", "p", "ladder", "family", "kappa", "hypotheses", "dio",
                "w1_lower", "rungs", "records", "predicted_class", "u1_evidence"):
        assert key in d
    assert [r["length"] for r in d["rungs"]] == list(LADDER)


def test_periodic_input_rejected():
    with pytest.raises(RationalValueError):
        classify(load_spec("constant"), 2, (100, 1000))
    eventually = spec_from_dict({"kind": "morphic", "images": ["01", "11"], "id": "zero-then-ones"})
    with pytest.raises(RationalValueError):
        classify(eventually, 3, (100, 1000))


def test_bad_ladder():
    with pytest.raises(ValueError):
        classify(load_spec("thue-morse"), 2, (100, 100))


def test_other_prime_keeps_class():
    r = classify(load_spec("golden-sturmian"), 3, (100, 1000, 3000))
    assert r.predicted == "S-or-T" and all(a.passed for a in sanity_assertions(r))


def test_family_parameters():
    pd = family_info(load_spec("period-doubling"))
    assert (pd.params["kernel_size"], pd.dio_upper) == (4, 16)
    fib = family_info(load_spec("fibonacci-word"))
    assert fib.params["primitive"] and fib.kappa_bound == 2 * 2 ** (4 * 2 - 2) * 2 ** 3


def test_u1_evidence_rule():
    F = Fraction
    assert u1_evidence([F(2), F(4), F(8)])
    assert not u1_evidence([F(2), F(4), F(5)])
    assert not u1_evidence([F(7), F(7), F(8)])
    assert not u1_evidence([])


def test_independence_conclusive():
    rep = independence_report(load_spec("golden-sturmian"), load_spec("unbounded-sturmian"), 2, LADDER)
    assert rep.conclusive
    assert all("agrees" in line for line in rep.correspondence)
    assert any("Mahler" in line for line in rep.chain)


def test_independence_inconclusive_and_errors():
    short = (100, 1000, 3000)
    golden = load_spec("golden-sturmian")
    silver = spec_from_dict({"kind": "sturmian", "theta": {"quadratic": [-1, 1, 1, 2]}, "id": "silver"})
    assert not independence_report(golden, silver, 2, short).conclusive
    with pytest.raises(ValueError):
        independence_report(load_spec("unbounded-sturmian"), golden, 2, short)
    with pytest.raises(ValueError):
        independence_report(golden, load_spec("thue-morse"), 2, short)
