"""Coefficient growth of the Dyson-realization recurrence against the symmetric one.

The Dyson ladder pair is a diagonal similarity S^-1 (symmetric) S of the
adjoint pair with ln S_n = sum_{i<n} ln([i+2k]_q / (i+2k)) / 2, which grows
like n**2 ln(q) / 4. Its recurrence solution is the symmetric one multiplied
by S_n and cannot be normalized.

    python3 scripts/dyson_tail_growth.py --q 1.25 --lambda 0.5 --eta 0.3
"""
import argparse
import numpy as np

from qintel.qnum import q_bracket_ratio
from qintel.representation import RepresentationSpec
from qintel.states import ISParams, solve_recurrence


def log_abs_unnormalized(state):
    # undo the normalization: c_0 = 1 before it
    return np.log(np.abs(state.coeffs) / abs(state.coeffs[0]) + 1e-300)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=float, default=1.25)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.5)
    parser.add_argument("--k", type=float, default=1.0)
    parser.add_argument("--eta", type=float, default=0.3)
    parser.add_argument("--n", type=int, default=64)
    args = parser.parse_args()

    logs = {}
    for realization in ("dyson_paper", "symmetric"):
        spec = RepresentationSpec("discrete_series", args.k, args.n, args.q, realization)
        state = solve_recurrence(ISParams(args.lam, spec, args.eta), auto_extend=False)
        logs[realization] = log_abs_unnormalized(state)
        print(f"{realization:>12}: tail {state.tail:.3e}, converged {state.converged}")

    s_vals = np.arange(args.n - 1) + 2 * args.k
    log_similarity = np.concatenate([[0.0], np.cumsum(0.5 * np.log(q_bracket_ratio(s_vals, args.q)))])
    print(f"{'n':>4} {'ln|c_n| dyson':>15} {'ln|c_n| sym':>13} {'difference':>11} {'ln S_n':>9}")
    for n in range(0, args.n, max(1, args.n // 16)):
        d, s = logs["dyson_paper"][n], logs["symmetric"][n]
        print(f"{n:>4} {d:>15.3f} {s:>13.3f} {d - s:>11.3f} {log_similarity[n]:>9.3f}")


if __name__ == "__main__":
    main()
