"""Which Pollaczek normalization exponent satisfies the three-term recurrence?

    python3 scripts/arbitrate_exponent_mode.py [--samples 100] [--n-max 50]
"""
import argparse

from qintel.special import arbitrate_exponent_mode


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--n-max", type=int, default=50)
    parser.add_argument("--seed", type=int, default=20240519)
    args = parser.parse_args()
    result = arbitrate_exponent_mode(samples=args.samples, n_max=args.n_max, seed=args.seed)
    for mode, worst in sorted(result.worst_residual.items()):
        verdict = "pass" if result.passed[mode] else "fail"
        print(f"{mode:>6}: worst scaled residual {worst:.3e} ({verdict})")
    print(f"winner: {result.winner}")


if __name__ == "__main__":
    main()
