"""Quadrature variances of discrete-series intelligent states across lambda.

Writes a CSV through the command-line front end and prints a short table.

    python3 scripts/squeezing_sweep.py --output squeezing.csv
"""
import argparse
import csv
import io

from qintel.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", default="1")
    parser.add_argument("--eta", default="0.1")
    parser.add_argument("--lambda-grid", default="0.2:3.0:15")
    parser.add_argument("--q-grid", default="1")
    parser.add_argument("--output", default="squeezing.csv")
    args = parser.parse_args()
    code = cli_main([
        "sweep", "--k", args.k, "--eta-re", args.eta, "--lambda", args.lambda_grid,
        "--q", args.q_grid, "--format", "csv", "--output", args.output,
    ])
    if code:
        raise SystemExit(code)
    with open(args.output) as fh:
        rows = list(csv.DictReader(io.StringIO(fh.read())))
    print(f"{'lambda':>7} {'q':>5} {'var_x1':>10} {'var_x2':>10} squeezed")
    for row in rows:
        which = "X1" if row["squeezed_x1"] == "true" else "X2" if row["squeezed_x2"] == "true" else "-"
        print(f"{float(row['lambda']):>7.3f} {float(row['q']):>5.2f} {float(row['var_x1']):>10.4f} {float(row['var_x2']):>10.4f} {which}")
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
