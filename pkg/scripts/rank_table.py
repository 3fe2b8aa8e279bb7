"""Print observed and predicted generic ranks for the built-in algebras."""

import argparse

from ginv.distribution import generic_rank
from ginv.liealg import build_standard, profile

ALGEBRAS = ["abelian:1", "abelian:3", "heisenberg3", "sl2", "so3", "so4", "sl3", "so5"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    ns = list(range(2, args.max_n + 1))
    print(f"{'algebra':12} {'m':>3} {'l':>3}  " + "  ".join(f"n={n:<6}" for n in ns))
    for name in ALGEBRAS:
        spec = build_standard(name)
        prof = profile(spec, seed=args.seed)
        cells = []
        for n in ns:
            rep = generic_rank(spec, n, seed=args.seed, prof=prof)
            pred = "-" if rep.predicted is None else rep.predicted
            cells.append(f"{rep.observed}/{pred}".ljust(8))
        print(f"{name:12} {prof.m:>3} {prof.l:>3}  " + "  ".join(cells))
    print("cells are observed/predicted; '-' means no closed-form prediction")


if __name__ == "__main__":
    main()
