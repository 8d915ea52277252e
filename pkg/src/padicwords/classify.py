"""Evidence reports placing p-adic numbers with structured digits in Mahler's classes.

Only three outcomes are reported: "S-or-T" (degree-one exponent provably
finite for the family), "U1" (empirical evidence of unbounded repetitions)
and "indeterminate".  Nothing here decides the class of a specific number;
finite-window hypothesis checks are labelled as such.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexity import complexity_kappa, stable_profile
from .errors import RationalValueError
from .generators import (Automaton, MorphicSystem, SturmianParams, automaton_from_uniform_morphism,
                         indicator_stream, is_primitive, kernel_size, sturmian_stream)
from .padic import (ApproximationRecord, PadicDigits, best_rational_approximations, chain_records,
                    w1_lower_estimate)
from .quadratic import CFPrefix, QuadraticNumber, declared_unbounded, has_bounded_quotients
from .repetition import DioEstimate, dio_lower_bound
from .specs import SequenceSpec
from .words import detect_ultimate_period

SPEC_VERSION = "1"
DEFAULT_LADDER = (100, 316, 1000, 3162, 10000)


def _frac(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def eq_last_bound(kappa: int, dio_upper) -> Fraction:
    """8 (kappa+1)^2 (2 kappa + 1) Dio - 1, the degree-one exponent bound for linear complexity."""
    return 8 * (kappa + 1) ** 2 * (2 * kappa + 1) * Fraction(dio_upper) - 1


@dataclass
class FamilyInfo:
    kind: str
    kappa_bound: int | None = None
    dio_upper: int | None = None
    proof_class: str | None = None
    params: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def family_info(spec: SequenceSpec) -> FamilyInfo:
    """Structural parameters and the theorem-backed conclusions they allow."""
    obj = spec.obj
    if spec.kind == "automaton" or (spec.kind == "morphic" and obj.sigma.uniform_length()
                                    and obj.sigma.uniform_length() >= 2):
        A: Automaton = obj if spec.kind == "automaton" else automaton_from_uniform_morphism(obj)
        m = kernel_size(A)
        d = A.state_count
        info = FamilyInfo("automatic", A.k * d * d, None if m is None else A.k ** m,
                          "S-or-T", {"k": A.k, "d": d, "kernel_size": m})
        info.notes.append(f"complexity bound p(n) <= k d^2 n = {A.k * d * d} n")
        if m is not None:
            info.notes.append(f"Dio < k^m = {A.k ** m}")
        return info
    if spec.kind == "morphic":
        sys: MorphicSystem = obj
        v, b = sys.sigma.width, sys.sigma.alphabet_size
        prim = is_primitive(sys.sigma)
        info = FamilyInfo("morphic", None, None, None, {"width": v, "alphabet": b, "primitive": prim})
        if prim and b >= 2:
            info.kappa_bound = 2 * v ** (4 * b - 2) * b ** 3
            info.proof_class = "S-or-T"
            info.notes.append("primitive morphic: Dio finite")
        return info
    if spec.kind == "sturmian":
        params: SturmianParams = obj
        theta = params.theta
    else:
        theta, _ = obj
    bounded = has_bounded_quotients(theta)
    info = FamilyInfo(spec.kind, 2, None, "S-or-T" if bounded else None,
                      {"slope": str(theta), "bounded_quotients": bounded,
                       "declared_unbounded": declared_unbounded(theta)})
    info.notes.append("complexity n + 1")
    if bounded:
        info.notes.append("quadratic slope: bounded partial quotients, Dio finite")
    return info


@dataclass
class RungEvidence:
    length: int
    dio: Fraction
    w1: Fraction


@dataclass
class ClassificationReport:
    spec_id: str
    p: int
    ladder: tuple[int, ...]
    family: FamilyInfo
    kappa_measured: int
    kappa_ratio: Fraction
    complexity_stable: bool
    periodicity_checked: int
    dio: DioEstimate
    w1: Fraction
    records: list[ApproximationRecord]
    rungs: list[RungEvidence]
    predicted: str
    basis: str
    u1_evidence: bool
    bound_family: Fraction | None
    bound_measured: Fraction | None
    spec_version: str = SPEC_VERSION

    def to_dict(self) -> dict:
        return {
            "spec_version": self.spec_version,
            "spec": self.spec_id,
            "p": self.p,
            "ladder": list(self.ladder),
            "family": {"kind": self.family.kind, "kappa_bound": self.family.kappa_bound,
                       "dio_upper": self.family.dio_upper, **self.family.params,
                       "notes": self.family.notes},
            "kappa": {"measured": self.kappa_measured, "max_ratio": _frac(self.kappa_ratio),
                      "window_stable": self.complexity_stable},
            "hypotheses": {"finite_window": True, "linear_complexity": True,
                           "no_period_within": self.periodicity_checked},
            "dio": self.dio.to_dict(),
            "w1_lower": _frac(self.w1),
            "rungs": [{"length": r.length, "dio": _frac(r.dio), "w1": _frac(r.w1)} for r in self.rungs],
            "records": [r.to_dict() for r in self.records],
            "predicted_class": self.predicted,
            "basis": self.basis,
            "u1_evidence": self.u1_evidence,
            "bound_family_kappa": _frac(self.bound_family),
            "bound_measured_kappa": _frac(self.bound_measured),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        rows = [
            ("spec", self.spec_id),
            ("p", str(self.p)),
            ("family", self.family.kind),
            ("kappa (measured / family)", f"{self.kappa_measured} / {self.family.kappa_bound}"),
            ("Dio lower bound", f"{_frac(self.dio.bound)} ~ {float(self.dio.bound):.4f}"),
            ("w1 lower estimate", f"{_frac(self.w1)} ~ {float(self.w1):.4f}"),
            ("w1 upper (family kappa)", "-" if self.bound_family is None else str(self.bound_family)),
            ("predicted class", self.predicted),
            ("basis", self.basis),
        ]
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        lines.append("")
        lines.append(f"{'rung'.rjust(8)}  {'Dio lower':>12}  {'w1 lower':>12}")
        for r in self.rungs:
            lines.append(f"{r.length:>8}  {float(r.dio):>12.4f}  {float(r.w1):>12.4f}")
        return "\n".join(lines) + "\n"


def u1_evidence(dios: Sequence[Fraction], threshold: Fraction = Fraction(5), run: int = 3) -> bool:
    """Dio lower bounds rise strictly over ``run`` consecutive rungs and Dio - 1 ends above threshold."""
    if not dios or max(Fraction(1), dios[-1] - 1) <= threshold:
        return False
    streak = 1
    for a, b in zip(dios, dios[1:]):
        streak = streak + 1 if b > a else 1
        if streak >= run:
            return True
    return False


def classify(spec: SequenceSpec, p: int = 2, ladder: Sequence[int] = DEFAULT_LADDER,
             u1_threshold=Fraction(5), stream=None) -> ClassificationReport:
    """Collect complexity, repetition and approximation evidence along a ladder of prefix lengths."""
    ladder = tuple(ladder)
    if len(ladder) < 1 or any(a >= b for a, b in zip(ladder, ladder[1:])) or ladder[0] < 2:
        raise ValueError("ladder must be strictly increasing lengths >= 2")
    stream = spec.stream() if stream is None else stream
    xi = PadicDigits(p, stream)
    L = ladder[-1]
    top = stream.prefix(L)
    per = detect_ultimate_period(top, L // 4, max(1, L // 16))
    if per is not None:
        U, V = per
        raise RationalValueError(
            f"{spec.id}: digits look ultimately periodic (|U| = {len(U)}, |V| = {len(V)}); "
            "the value is rational")
    fam = family_info(spec)
    n_max = max(2, min(64, L // 20))
    kappa, ratio = complexity_kappa(top, (1, n_max))
    _, stable = stable_profile(stream, n_max, max(n_max, L // 2))

    precision = 2 * L
    lattice = best_rational_approximations(xi, precision, height_cap=p ** precision, levels=ladder)
    rungs = []
    dio = None
    for i, rung in enumerate(ladder):
        dio = dio_lower_bound(stream, ladder[:i + 1])
        recs = [r for r in lattice if r.j <= rung] + chain_records(xi, dio.chain, precision)
        rungs.append(RungEvidence(rung, dio.bound, w1_lower_estimate(recs)))
    records = sorted(lattice + chain_records(xi, dio.chain, precision), key=lambda r: (r.j, r.H))
    w1 = w1_lower_estimate(records)

    evidence = u1_evidence([r.dio for r in rungs], Fraction(u1_threshold))
    if fam.proof_class:
        predicted, basis = fam.proof_class, "family theorem (linear complexity and finite Dio)"
    elif evidence and (fam.kind == "morphic" or fam.params.get("declared_unbounded")):
        predicted, basis = "U1", "empirical: Dio lower bounds growing along the ladder"
    else:
        predicted, basis = "indeterminate", "no proof-backed family and no growth evidence"

    bound_family = bound_measured = None
    if fam.dio_upper is not None:
        bound_measured = eq_last_bound(kappa, fam.dio_upper)
        if fam.kappa_bound is not None:
            bound_family = eq_last_bound(fam.kappa_bound, fam.dio_upper)
    return ClassificationReport(spec.id, p, ladder, fam, kappa, ratio, stable, L, dio, w1, records,
                                rungs, predicted, basis, evidence, bound_family, bound_measured)


@dataclass(frozen=True)
class Assertion:
    name: str
    passed: bool
    detail: str = ""


def sanity_assertions(report: ClassificationReport) -> list[Assertion]:
    """Check the report's numbers against the inequalities they must satisfy."""
    out = []
    if not report.records:
        return [Assertion("records", True, "warning: no approximation records, checks are vacuous")]
    w1 = report.w1
    out.append(Assertion("w1 >= 1", w1 >= 1, f"w1 = {_frac(w1)}"))
    floor = max(Fraction(1), report.dio.bound - 1)
    out.append(Assertion("w1 >= max(1, Dio - 1)", w1 >= floor, f"{_frac(w1)} vs {_frac(floor)}"))
    for name, bound in (("family", report.bound_family), ("measured", report.bound_measured)):
        if bound is not None:
            out.append(Assertion(f"w1 <= eq bound ({name} kappa)", w1 <= bound,
                                 f"{_frac(w1)} vs {_frac(bound)}"))
    for r in report.rungs:
        out.append(Assertion(f"rung {r.length}: w1 >= max(1, Dio - 1)",
                             r.w1 >= max(Fraction(1), r.dio - 1)))
    return out


# ---------------------------------------------------------------------------
# algebraic independence from distinct classes


@dataclass
class IndependenceReport:
    first: ClassificationReport
    second: ClassificationReport
    correspondence: list[str]
    conclusive: bool
    chain: list[str]

    def to_dict(self) -> dict:
        return {
            "spec_version": SPEC_VERSION,
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "beatty_correspondence": self.correspondence,
            "conclusive": self.conclusive,
            "chain": self.chain,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _inverse_slope(theta):
    if isinstance(theta, QuadraticNumber):
        return theta.inverse()
    q = theta.quotients
    if q[0] != 0 or len(q) < 3:
        raise ValueError("need a continued fraction [0; a1, a2, ...] with a1, a2 present")
    return CFPrefix(q[1:])


def beatty_check(params: SturmianParams, N: int) -> str:
    """Confirm on n <= N that the Sturmian word is the indicator of a Beatty set.

    Ceiling words are t_{1/theta, -rho/theta}; floor words are t'_{1/theta, -rho/theta - 1}.
    """
    theta, rho = params.theta, params.rho
    if isinstance(theta, CFPrefix) and rho != 0:
        return f"skipped: intercept {rho} gives an irrational Beatty intercept"
    Theta = _inverse_slope(theta)
    shift = rho * Theta if isinstance(theta, QuadraticNumber) else Fraction(0)
    if params.variant == "ceiling":
        beatty_rho = -shift
        ind = indicator_stream(Theta, beatty_rho)[0]
    else:
        beatty_rho = -shift - 1
        ind = indicator_stream(Theta, beatty_rho)[1]
    plain = SturmianParams(theta, rho, params.variant, (0, 1))
    ok = ind.prefix(N).symbols == sturmian_stream(plain).prefix(N).symbols
    return f"{'agrees' if ok else 'DIFFERS'} on n <= {N} with the Beatty indicator of slope {Theta}"


def independence_report(spec_a: SequenceSpec, spec_b: SequenceSpec, p: int = 2,
                        ladder: Sequence[int] = DEFAULT_LADDER) -> IndependenceReport:
    """Compare a bounded-quotient Sturmian number with a second Sturmian number.

    Numbers in different Mahler classes are algebraically independent, so a
    proof-backed S-or-T prediction against U1 evidence yields the conclusion;
    anything else is reported as inconclusive.
    """
    for s in (spec_a, spec_b):
        if s.kind != "sturmian":
            raise ValueError(f"{s.id}: independence needs Sturmian specs")
    if not isinstance(spec_a.obj.theta, QuadraticNumber):
        raise ValueError(f"{spec_a.id}: the first slope must be quadratic (certified bounded quotients)")
    ra = classify(spec_a, p, ladder)
    rb = classify(spec_b, p, ladder)
    corr = [f"{spec_a.id}: {beatty_check(spec_a.obj, ladder[-1])}",
            f"{spec_b.id}: {beatty_check(spec_b.obj, ladder[-1])}"]
    conclusive = ra.predicted == "S-or-T" and rb.predicted == "U1"
    chain = [
        f"{spec_a.id}: slope {spec_a.obj.theta} has bounded partial quotients, so its Dio is finite "
        f"and the number is an S- or T-number",
        f"{spec_b.id}: predicted {rb.predicted} (Dio lower bounds {', '.join(f'{float(r.dio):.2f}' for r in rb.rungs)})",
    ]
    if conclusive:
        chain.append("numbers in different Mahler classes are algebraically independent "
                     "(Mahler's lemma: algebraically dependent numbers share a class)")
        chain.append("conclusion: the two numbers are algebraically independent "
                     "(second class from finite-window evidence)")
    else:
        chain.append("inconclusive: the predicted classes do not differ")
    return IndependenceReport(ra, rb, corr, conclusive, chain)
