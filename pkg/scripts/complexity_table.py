"""Measured complexity ratio max p(n)/n against the family's proven constant.

Usage: python scripts/complexity_table.py [--length 20000] [--n-max 200]
"""

import argparse

from padicwords.classify import family_info
from padicwords.complexity import complexity_kappa
from padicwords.specs import builtin_names, load_spec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=20000)
    ap.add_argument("--n-max", type=int, default=200)
    args = ap.parse_args()

    print(f"{'spec':<20} {'family':<10} {'max p(n)/n':>11} {'kappa':>6} {'proven':>8}")
    for name in builtin_names():
        spec = load_spec(name)
        info = family_info(spec)
        kappa, ratio = complexity_kappa(spec.stream().prefix(args.length), (1, args.n_max))
        proven = "-" if info.kappa_bound is None else str(info.kappa_bound)
        print(f"{name:<20} {info.kind:<10} {float(ratio):>11.3f} {kappa:>6} {proven:>8}")


if __name__ == "__main__":
    main()
