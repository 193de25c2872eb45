"""Deviation of the n-dependent closed form from the recurrence as q moves away from 1.

    python3 scripts/closed_form_q_diagnostic.py
"""
import argparse

from qintel.representation import RepresentationSpec
from qintel.states import ISParams, closed_form_deviation


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lambda", dest="lam", type=float, default=0.5)
    parser.add_argument("--k", type=float, default=1.0)
    parser.add_argument("--eta", type=float, default=0.3)
    parser.add_argument("--n-max", type=int, default=30)
    args = parser.parse_args()
    print(f"{'q':>6} {'realization':>12} {'max ratio deviation':>20}")
    for q in (1.0, 1.01, 1.05, 1.1, 1.2, 1.5, 2.0):
        for realization in ("dyson_paper", "symmetric"):
            spec = RepresentationSpec("discrete_series", args.k, args.n_max + 2, q, realization)
            dev = closed_form_deviation(ISParams(args.lam, spec, args.eta), args.n_max)
            print(f"{q:>6} {realization:>12} {dev:>20.3e}")


if __name__ == "__main__":
    main()
