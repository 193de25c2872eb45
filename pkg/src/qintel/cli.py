"""Command-line front end.

Subcommands: ``gen``, ``verify``, ``spectrum``, ``sweep`` and
``algebra-check``. Output goes to ``--output``, else to a generated file name
inside ``$ISQ_OUTPUT_DIR`` when that is set, else to stdout.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 convergence
failure under ``--strict``. Failures print a JSON error object to stderr.
"""
import argparse
import json
import os
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import DEFAULTS, FORMATS, METHODS, RunConfig, parse_grid
from .errors import ConvergenceError, DomainError
from .representation import (
    REALIZATIONS,
    build_triple,
    casimir_check,
    casimir_value,
    commutator_report,
    hermiticity_report,
)
from .serialize import (
    FORMAT_VERSION,
    coeffs_to_csv,
    dumps,
    matrix_to_csv,
    matrix_to_json,
    report_to_dict,
    rows_to_csv,
    spec_to_dict,
    state_from_dict,
    state_to_dict,
)
from .special import EXPONENT_MODES
from .states import (
    MAX_TRUNCATION,
    eigen_residual,
    require_converged,
    solve_by_diagonalization,
    solve_closed_form,
    solve_recurrence,
    verify,
)

__all__ = ["EXIT_CONVERGENCE", "EXIT_OK", "EXIT_USAGE", "EXIT_VALIDATION", "OUTPUT_DIR_ENV", "main", "run"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_CONVERGENCE = 4

OUTPUT_DIR_ENV = "ISQ_OUTPUT_DIR"

REPORT_COLUMNS = [
    "lambda", "q", "eta_re", "eta_im", "eigen_residual", "var_x1", "var_x2",
    "saturation_gap", "squeezed_x1", "squeezed_x2", "tail", "converged",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--algebra", choices=("su11", "su2"), default=DEFAULTS["algebra"])
    p.add_argument("--k", type=float, default=DEFAULTS["k"], help="Bargmann index (su11)")
    p.add_argument("--j", type=float, default=DEFAULTS["j"], help="spin (su2)")
    p.add_argument("--q", default=str(DEFAULTS["q"]), help="deformation parameter")
    p.add_argument("--lambda", dest="lam", default=str(DEFAULTS["lam"]))
    p.add_argument("--eta-re", type=float, default=DEFAULTS["eta_re"])
    p.add_argument("--eta-im", type=float, default=DEFAULTS["eta_im"])
    p.add_argument("--trunc", type=int, default=DEFAULTS["trunc"], help="kept discrete-series states")
    p.add_argument("--tail-tol", type=float, default=DEFAULTS["tail_tol"])
    p.add_argument("--realization", choices=REALIZATIONS, default=DEFAULTS["realization"])
    p.add_argument("--exponent-mode", choices=("auto",) + EXPONENT_MODES, default=DEFAULTS["exponent_mode"])
    p.add_argument("--output", dest="output_path", default=None, help="output file (default: stdout)")
    p.add_argument("--format", dest="output_format", choices=FORMATS, default=DEFAULTS["output_format"])
    p.add_argument("--strict", action="store_true", help="fail on non-converged states")
    return p


def build_parser():
    parser = _Parser(prog="qintel", description="Intelligent states of su(1,1), su(2) and q-deformations.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    common = _common_flags()

    gen = sub.add_parser("gen", parents=[common], help="generate a state (su2: all admissible states)")
    gen.add_argument("--method", choices=METHODS, default=DEFAULTS["method"])
    gen.add_argument("--eta-index", type=int, default=None, help="su2: emit only this eigenstate")

    ver = sub.add_parser("verify", parents=[common], help="verification report for a state")
    ver.add_argument("--input", dest="input_path", default=None, help="state file written by gen")
    ver.add_argument("--method", choices=METHODS, default=DEFAULTS["method"])
    ver.add_argument("--eta-index", type=int, default=None)

    sub.add_parser("spectrum", parents=[common], help="eigenvalues eta of the truncated operator")

    sweep = sub.add_parser("sweep", parents=[common], help="report rows over a (lambda, q) grid")
    sweep.add_argument("--jobs", type=int, default=DEFAULTS["jobs"], help="worker processes")

    alg = sub.add_parser("algebra-check", parents=[common], help="commutator, hermiticity and Casimir checks")
    alg.add_argument("--matrices", action="store_true", help="include the operator matrices")
    return parser


def _number(text, name):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--{name} expects a number, got {text!r}") from None


def parse_config(argv):
    """Parse flags into a validated :class:`RunConfig` plus the raw namespace."""
    args = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    values.pop("lam"), values.pop("q")
    if args.subcommand == "sweep":
        lam_grid, q_grid = parse_grid(args.lam), parse_grid(args.q)
        return RunConfig(lam=lam_grid[0], q=q_grid[0], lam_grid=lam_grid, q_grid=q_grid, **values), args
    return RunConfig(lam=_number(args.lam, "lambda"), q=_number(args.q, "q"), **values), args


def _state_doc(state, params):
    doc = state_to_dict(state, params)
    doc["eigen_residual"] = eigen_residual(state.coeffs, params.with_spec(state.spec))
    return doc


def _solve(cfg, params):
    """(state, params) pairs: one for su11, every admissible state for su2."""
    if cfg.algebra == "su2":
        pairs = [(s, params.with_eta(eta)) for eta, s in solve_by_diagonalization(params, tail_tol=cfg.tail_tol)]
        if cfg.eta_index is not None:
            if cfg.eta_index >= len(pairs):
                raise DomainError(f"eta index {cfg.eta_index} out of range (dimension {len(pairs)})")
            pairs = [pairs[cfg.eta_index]]
        return pairs
    if cfg.method == "closed-form":
        state = solve_closed_form(params, exponent_mode=cfg.selected_exponent_mode, tail_tol=cfg.tail_tol)
    else:
        state = solve_recurrence(params, tail_tol=cfg.tail_tol, max_truncation=max(MAX_TRUNCATION, cfg.trunc))
    if cfg.strict:
        require_converged(state)
    return [(state, params)]


def _report_row(report, params):
    return {
        "lambda": params.lam,
        "q": params.spec.q,
        "eta_re": params.eta.real,
        "eta_im": params.eta.imag,
        "eigen_residual": report.eigen_residual,
        "var_x1": report.var_x1,
        "var_x2": report.var_x2,
        "saturation_gap": report.saturation_gap,
        "squeezed_x1": report.squeezed_x1,
        "squeezed_x2": report.squeezed_x2,
        "tail": report.tail,
        "converged": report.converged,
    }


def _single_or_set(docs, kind):
    if len(docs) == 1:
        return docs[0]
    return {"kind": f"{kind}_set", "version": FORMAT_VERSION, f"{kind}s": docs}


def cmd_gen(cfg):
    pairs = _solve(cfg, cfg.params())
    if cfg.output_format == "csv":
        columns, rows = None, []
        for i, (state, _) in enumerate(pairs):
            columns, part = coeffs_to_csv(state.coeffs, i if cfg.algebra == "su2" else None)
            rows.extend(part)
        return rows_to_csv(columns, rows)
    return dumps(_single_or_set([_state_doc(s, p) for s, p in pairs], "state"))


def _load_states(path):
    doc = json.loads(pathlib.Path(path).read_text())
    docs = doc["states"] if doc.get("kind") == "state_set" else [doc]
    return [state_from_dict(d) for d in docs]


def cmd_verify(cfg):
    pairs = _load_states(cfg.input_path) if cfg.input_path else _solve(cfg, cfg.params())
    if cfg.strict:
        for state, _ in pairs:
            require_converged(state)
    reports = [(verify(s, p), p.with_spec(s.spec)) for s, p in pairs]
    if cfg.output_format == "csv":
        return rows_to_csv(REPORT_COLUMNS, [_report_row(r, p) for r, p in reports])
    return dumps(_single_or_set([report_to_dict(r, p) for r, p in reports], "report"))


def cmd_spectrum(cfg):
    params = cfg.params()
    rows = []
    for i, (eta, state) in enumerate(solve_by_diagonalization(params, tail_tol=cfg.tail_tol)):
        rows.append({
            "index": i,
            "eta_re": eta.real,
            "eta_im": eta.imag,
            "eigen_residual": eigen_residual(state.coeffs, params.with_eta(eta)),
            "tail": state.tail,
            "converged": state.converged,
        })
    if cfg.output_format == "csv":
        return rows_to_csv(["index", "eta_re", "eta_im", "eigen_residual", "tail", "converged"], rows)
    doc = {"kind": "spectrum", "version": FORMAT_VERSION, "lambda": params.lam, "spec": spec_to_dict(params.spec)}
    doc["eigenvalues"] = [
        {"index": r["index"], "eta": [r["eta_re"], r["eta_im"]], **{k: r[k] for k in ("eigen_residual", "tail", "converged")}}
        for r in rows
    ]
    return dumps(doc)


def _sweep_point(cfg, lam, q):
    rows = []
    for state, params in _solve(cfg, cfg.params(lam, q)):
        rows.append(_report_row(verify(state, params), params.with_spec(state.spec)))
    return rows


def cmd_sweep(cfg):
    points = [(lam, q) for lam in cfg.lam_grid for q in cfg.q_grid]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            # map keeps grid order whatever the completion order
            chunks = list(pool.map(_sweep_point, [cfg] * len(points), *zip(*points)))
    else:
        chunks = [_sweep_point(cfg, lam, q) for lam, q in points]
    rows = [row for chunk in chunks for row in chunk]
    if cfg.output_format == "csv":
        return rows_to_csv(REPORT_COLUMNS, rows)
    return dumps({"kind": "sweep", "version": FORMAT_VERSION, "columns": REPORT_COLUMNS, "rows": rows})


def cmd_algebra_check(cfg, matrices=False):
    spec = cfg.spec()
    triple = build_triple(spec)
    comm = commutator_report(triple)
    casimir = casimir_check(triple) if spec.q == 1.0 else None
    if cfg.output_format == "csv":
        if matrices:
            parts = []
            for name, op in zip(("diag", "raising", "lowering"), triple):
                body = matrix_to_csv(op.entries).splitlines()[1:]
                parts.extend(f"{name},{line}" for line in body)
            return "operator,row,col,re,im\n" + "".join(line + "\n" for line in parts)
        rows = [{"check": key, "value": getattr(comm, key)} for key in ("diag_raise", "diag_lower", "raise_lower", "raise_lower_alt")]
        rows.append({"check": "hermiticity", "value": hermiticity_report(triple)})
        rows.append({"check": "casimir", "value": casimir})
        return rows_to_csv(["check", "value"], rows)
    doc = {
        "kind": "algebra_check",
        "version": FORMAT_VERSION,
        "spec": spec_to_dict(spec),
        "commutators": {
            "diag_raise": comm.diag_raise,
            "diag_lower": comm.diag_lower,
            "raise_lower": comm.raise_lower,
            "raise_lower_alt": comm.raise_lower_alt,
            "target": comm.target,
            "alt_target": comm.alt_target,
            "absolute": comm.absolute,
        },
        "hermiticity": hermiticity_report(triple),
        "casimir_residual": casimir,
        "casimir_value": casimir_value(spec),
    }
    if matrices:
        doc["matrices"] = {name: matrix_to_json(op.entries) for name, op in zip(("diag", "raising", "lowering"), triple)}
    return dumps(doc)


def run(cfg, *, matrices=False):
    """Execute one configuration and return the output text."""
    if cfg.subcommand == "gen":
        return cmd_gen(cfg)
    if cfg.subcommand == "verify":
        return cmd_verify(cfg)
    if cfg.subcommand == "spectrum":
        return cmd_spectrum(cfg)
    if cfg.subcommand == "sweep":
        return cmd_sweep(cfg)
    return cmd_algebra_check(cfg, matrices)


def _grid_label(values):
    if len(values) == 1:
        return f"{values[0]:g}"
    return f"{values[0]:g}_{values[-1]:g}_{len(values)}"


def default_filename(cfg):
    """Self-describing name used when only ``$ISQ_OUTPUT_DIR`` is given."""
    index = f"k{cfg.k:g}" if cfg.algebra == "su11" else f"j{cfg.j:g}"
    if cfg.subcommand == "sweep":
        tag = f"lambda{_grid_label(cfg.lam_grid)}-q{_grid_label(cfg.q_grid)}"
    else:
        tag = f"lambda{cfg.lam:g}-q{cfg.q:g}"
    return f"{cfg.subcommand}-{cfg.algebra}-{index}-{tag}.{cfg.output_format}"


def _emit(cfg, text):
    path = cfg.output_path
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        path = os.path.join(os.environ[OUTPUT_DIR_ENV], default_filename(cfg))
    if path is None:
        sys.stdout.write(text)
        return
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _fail(kind, message, code):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv=None):
    try:
        cfg, args = parse_config(sys.argv[1:] if argv is None else argv)
        _emit(cfg, run(cfg, matrices=getattr(args, "matrices", False)))
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except ConvergenceError as exc:
        return _fail("convergence", str(exc), EXIT_CONVERGENCE)
    except DomainError as exc:
        return _fail("validation", str(exc), EXIT_VALIDATION)
    except (OSError, ValueError, KeyError) as exc:
        return _fail("io", f"{type(exc).__name__}: {exc}", EXIT_VALIDATION)
    return EXIT_OK
