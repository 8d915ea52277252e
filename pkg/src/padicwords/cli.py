"""Command line entry point: ``padicwords <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import classify as cl
from .complexity import (Automatic, Primitive, Sturmian, check_complexity_bound, complexity_kappa,
                         complexity_profile, rows_to_csv)
from .errors import PrecisionExhausted, RationalValueError, SpecError
from .padic import (PadicDigits, best_rational_approximations, height, is_prime,
                    liouville_lower_bound, padic_abs, periodic_value)
from .quadratic import QuadraticNumber
from .repetition import check_triple, dio_lower_bound, find_repetition, triple_report
from .specs import load_spec, parse_rational
from .generators import st_identity_mismatch

NAMED_SLOPES = {
    "phi": QuadraticNumber(1, 1, 2, 5),
    "golden": QuadraticNumber(1, 1, 2, 5),
    "silver": QuadraticNumber(1, 1, 1, 2),
}


@dataclass(frozen=True)
class RunConfig:
    specs: tuple[str, ...]
    prime: int
    ladder: tuple[int, ...]
    out: Path | None
    fmt: str
    precision: int | None
    seed: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"--prime {self.prime} is not prime")
        if any(a >= b for a, b in zip(self.ladder, self.ladder[1:])):
            raise ValueError("--ladder must be strictly increasing")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(cfg: RunConfig, name: str, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    cfg.out.mkdir(parents=True, exist_ok=True)
    ext = {"json": "json", "csv": "csv", "text": "txt"}[cfg.fmt]
    (cfg.out / f"{name}.{ext}").write_text(text if text.endswith("\n") else text + "\n")


def _config(args) -> RunConfig:
    spec = getattr(args, "spec_pos", None) or args.spec
    return RunConfig((spec,) if spec else (), args.prime, args.ladder, args.out, args.format,
                     args.precision, args.seed)


def _slope(text: str) -> QuadraticNumber:
    if text.lower() in NAMED_SLOPES:
        return NAMED_SLOPES[text.lower()]
    parts = _ints(text)
    if len(parts) != 4:
        raise ValueError(f"slope {text!r}: use a name ({', '.join(NAMED_SLOPES)}) or a,b,c,d for (a+b*sqrt d)/c")
    return QuadraticNumber(*parts)


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    word = spec.stream().prefix(args.length)
    _emit(cfg, f"{spec.id}-generate", str(word))
    return 0


def _family_for(spec):
    info = cl.family_info(spec)
    if info.kind == "automatic":
        return Automatic(info.params["k"], info.params["d"])
    if info.kind == "morphic" and info.params.get("primitive"):
        return Primitive(info.params["width"], info.params["alphabet"])
    if info.kind in ("sturmian", "indicator"):
        return Sturmian()
    return None


def cmd_complexity(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    prefix = spec.stream().prefix(args.length)
    profile = complexity_profile(prefix, args.n_max, spec.id)
    family = _family_for(spec)
    if family is None:
        lines = ["n,p_n,bound,pass"] + [f"{n},{profile.p(n)},," for n in range(1, profile.n_max + 1)]
        _emit(cfg, f"{spec.id}-complexity", "\n".join(lines))
        return 0
    rows = check_complexity_bound(family, profile)
    _emit(cfg, f"{spec.id}-complexity", rows_to_csv(rows))
    return 0 if all(r.passed for r in rows) else 1


def _measured_kappa(stream, n1: int) -> int:
    kappa, _ = complexity_kappa(stream.prefix(max(4 * n1, 1000)), (1, n1))
    return kappa


def cmd_repetitions(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    stream = spec.stream()
    n0, n1 = args.n_range
    kappa = args.kappa or _measured_kappa(stream, n1)
    lines, ok = [], True
    for n in range(n0, n1 + 1):
        t = find_repetition(stream, n, kappa)
        checks = check_triple(t, stream.prefix((kappa + 1) * n), n, kappa)
        ok &= all(checks.values())
        lines.append(json.dumps(triple_report(t, n, kappa, checks)))
    _emit(cfg, f"{spec.id}-repetitions", "\n".join(lines))
    return 0 if ok else 1


def cmd_dio(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    est = dio_lower_bound(spec.stream(), cfg.ladder)
    d = {"spec": spec.id, "ladder": list(cfg.ladder), **est.to_dict()}
    _emit(cfg, f"{spec.id}-dio", json.dumps(d, indent=2))
    return 0


def cmd_approx(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    k = cfg.precision or args.k
    xi = PadicDigits(cfg.prime, spec.stream())
    recs = best_rational_approximations(xi, k, args.height_cap)
    _emit(cfg, f"{spec.id}-approx", "\n".join(json.dumps(r.to_dict()) for r in recs))
    return 0


def cmd_classify(args, cfg: RunConfig) -> int:
    spec = load_spec(cfg.specs[0])
    p = args.prime_pos or cfg.prime
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    report = cl.classify(spec, p, cfg.ladder)
    checks = cl.sanity_assertions(report)
    if cfg.fmt == "text":
        text = report.to_text() + "".join(
            f"{'PASS' if a.passed else 'FAIL'}  {a.name}  {a.detail}\n" for a in checks)
    else:
        d = report.to_dict()
        d["sanity"] = [{"name": a.name, "passed": a.passed, "detail": a.detail} for a in checks]
        text = json.dumps(d, indent=2)
    _emit(cfg, f"{spec.id}-classify", text)
    return 0 if all(a.passed for a in checks) else 1


def cmd_independence(args, cfg: RunConfig) -> int:
    a, b = load_spec(args.first), load_spec(args.second)
    rep = cl.independence_report(a, b, cfg.prime, cfg.ladder)
    _emit(cfg, f"{a.id}-{b.id}-independence", rep.to_json())
    return 0


def _random_rational(rng: random.Random, cap: int) -> Fraction:
    return Fraction(rng.randint(-cap, cap), rng.randint(1, cap))


def cmd_verify(args, cfg: RunConfig) -> int:
    rng = random.Random(cfg.seed)
    what, params = args.check, args.params
    if what == "st":
        theta = _slope(params[0] if params else "phi")
        rho = parse_rational(params[1] if len(params) > 1 else "0", "rho")
        N = int(params[2]) if len(params) > 2 else 10_000
        bad = st_identity_mismatch(theta, rho, N)
        msg = "pass" if bad is None else f"fail: identity for {bad[0]} breaks at n = {bad[1]}"
        _emit(cfg, "verify-st", msg)
        return 0 if bad is None else 1
    if what == "height":
        fails = 0
        for _ in range(args.trials):
            p = rng.choice((2, 3, 5, 7))
            U = [rng.randrange(p) for _ in range(rng.randint(0, 12))]
            V = [rng.randrange(p) for _ in range(rng.randint(1, 12))]
            fails += height(periodic_value(U, V, p)) > p ** (len(U) + len(V))
        _emit(cfg, "verify-height", "pass" if not fails else f"fail: {fails} violations")
        return 0 if not fails else 1
    if what == "liouville":
        fails = 0
        primes = (cfg.prime,) if args.prime_given else (2, 3, 5)
        for p in primes:
            for _ in range(args.trials):
                a, b = _random_rational(rng, 10 ** 6), _random_rational(rng, 10 ** 6)
                if a == b:
                    continue
                fails += padic_abs(a - b, p) < liouville_lower_bound(a, b)
        _emit(cfg, "verify-liouville", "pass" if not fails else f"fail: {fails} violations")
        return 0 if not fails else 1
    if what == "repetition":
        spec = load_spec(params[0] if params else cfg.specs[0])
        stream = spec.stream()
        n0, n1 = (_ints(params[1]) if len(params) > 1 else (2, 200))
        kappa = int(params[2]) if len(params) > 2 else _measured_kappa(stream, n1)
        fails = []
        for n in range(n0, n1 + 1):
            t = find_repetition(stream, n, kappa)
            checks = check_triple(t, stream.prefix((kappa + 1) * n), n, kappa)
            fails += [(n, k) for k, v in checks.items() if not v]
        _emit(cfg, "verify-repetition", "pass" if not fails else f"fail: {fails[:10]}")
        return 0 if not fails else 1
    raise ValueError(f"unknown check {what!r}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="bundled spec name or path to a spec JSON file")
    common.add_argument("--prime", type=int, default=2)
    common.add_argument("--ladder", type=_ints, default=cl.DEFAULT_LADDER,
                        help="comma-separated prefix lengths")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", type=Path, help="write results into this directory")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=int, help="number of digits to examine")

    parser = argparse.ArgumentParser(prog="padicwords", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="print a prefix of a sequence")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.add_argument("length", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("complexity", parents=[common], help="CSV complexity profile against the family bound")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.add_argument("--length", type=int, default=5000)
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("repetitions", parents=[common], help="repetition triples as JSON lines")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.add_argument("--n-range", type=_ints, default=(2, 50))
    p.add_argument("--kappa", type=int, help="default: measured on the prefix")
    p.set_defaults(func=cmd_repetitions)

    p = sub.add_parser("dio", parents=[common], help="lower bound on the Diophantine exponent")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.set_defaults(func=cmd_dio)

    p = sub.add_parser("approx", parents=[common], help="rational approximation records")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.add_argument("--k", type=int, default=64, help="deepest precision level")
    p.add_argument("--height-cap", type=int, default=10 ** 12)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("classify", parents=[common], help="class prediction report")
    p.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p.add_argument("prime_pos", nargs="?", type=int, metavar="P")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("independence", parents=[common], help="compare two Sturmian numbers")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("verify", parents=[common], help="run an exact check")
    p.add_argument("check", choices=("st", "height", "liouville", "repetition"))
    p.add_argument("params", nargs="*")
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    argv_list = sys.argv[1:] if argv is None else list(argv)
    args.prime_given = "--prime" in argv_list
    try:
        cfg = _config(args)
        needs_spec = args.command not in ("verify", "independence")
        if needs_spec and not cfg.specs:
            raise SpecError("no spec given (positional SPEC or --spec)")
        return args.func(args, cfg)
    except (SpecError, PrecisionExhausted, RationalValueError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
