"""Dio lower bounds and w1 estimates along a ladder for every bundled spec.

Usage: python scripts/class_separation.py [--prime P] [--ladder 100,316,1000,3162,10000]
"""

import argparse

from padicwords.classify import DEFAULT_LADDER, classify
from padicwords.errors import RationalValueError
from padicwords.specs import builtin_names, load_spec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--ladder", default=",".join(map(str, DEFAULT_LADDER)))
    args = ap.parse_args()
    ladder = tuple(int(x) for x in args.ladder.split(","))

    print(f"{'spec':<20} {'class':<14} " + " ".join(f"{L:>9}" for L in ladder) + "   w1 lower")
    for name in builtin_names():
        try:
            rep = classify(load_spec(name), args.prime, ladder)
        except RationalValueError:
            print(f"{name:<20} {'rational':<14}")
            continue
        dios = " ".join(f"{float(r.dio):>9.3f}" for r in rep.rungs)
        print(f"{name:<20} {rep.predicted:<14} {dios}   {float(rep.w1):.3f}")


if __name__ == "__main__":
    main()
