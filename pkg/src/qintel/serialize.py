"""JSON and CSV encodings for matrices, states and reports.

Numbers are written with Python's shortest round-trip ``repr``, so reading a
file back reproduces every float bit for bit. Complex numbers are ``[re, im]``
pairs. Non-finite floats become ``null`` in JSON and an empty cell in CSV.
"""
import csv
import io
import json
import math
from dataclasses import asdict

import numpy as np

from .representation import RepresentationSpec
from .states import ISParams, StateVector

__all__ = [
    "FORMAT_VERSION",
    "coeffs_to_csv",
    "dumps",
    "matrix_to_csv",
    "matrix_to_json",
    "params_from_dict",
    "params_to_dict",
    "report_to_dict",
    "rows_to_csv",
    "spec_from_dict",
    "spec_to_dict",
    "state_from_dict",
    "state_to_dict",
]

FORMAT_VERSION = 1


def _real(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _pair(z):
    z = complex(z)
    return [_real(z.real), _real(z.imag)]


def _unpair(pair):
    return complex(float(pair[0]), float(pair[1]))


def jsonable(value):
    """Convert floats, complex numbers and arrays to JSON-ready values."""
    if value is None or isinstance(value, (bool, str, np.bool_)):
        return bool(value) if isinstance(value, np.bool_) else value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _real(value)
    if isinstance(value, (complex, np.complexfloating)):
        return _pair(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj):
    """Deterministic JSON text (fixed key order, trailing newline)."""
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def spec_to_dict(spec):
    return {
        "branch": spec.branch,
        "index": spec.index,
        "truncation": spec.truncation,
        "q": spec.q,
        "realization": spec.realization,
    }


def spec_from_dict(d):
    return RepresentationSpec(d["branch"], d["index"], d["truncation"], d["q"], d["realization"])


def params_to_dict(params):
    return {"lambda": params.lam, "eta": _pair(params.eta), "spec": spec_to_dict(params.spec)}


def params_from_dict(d):
    return ISParams(d["lambda"], spec_from_dict(d["spec"]), _unpair(d["eta"]))


def state_to_dict(state, params):
    """State document; ``params`` is stored alongside so it can be re-verified."""
    return {
        "kind": "state",
        "version": FORMAT_VERSION,
        "lambda": params.lam,
        "eta": _pair(state.eta),
        "spec": spec_to_dict(state.spec),
        "method": state.method,
        "converged": state.converged,
        "tail": state.tail,
        "norm_sq_inverse": _real(state.norm_sq_inverse),
        "coeffs": [_pair(c) for c in state.coeffs],
    }


def state_from_dict(d):
    """Inverse of :func:`state_to_dict`; returns ``(state, params)``."""
    if d.get("kind") != "state":
        raise ValueError(f"not a state document (kind={d.get('kind')!r})")
    spec = spec_from_dict(d["spec"])
    eta = _unpair(d["eta"])
    nsi = d["norm_sq_inverse"]
    state = StateVector(
        np.array([_unpair(c) for c in d["coeffs"]], dtype=complex),
        spec,
        eta,
        math.inf if nsi is None else float(nsi),
        float(d["tail"]),
        bool(d["converged"]),
        d["method"],
    )
    return state, ISParams(d["lambda"], spec, eta)


def report_to_dict(report, params):
    out = {"kind": "report", "version": FORMAT_VERSION}
    out.update(params_to_dict(params))
    out.update(jsonable(asdict(report)))
    return out


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value)) if math.isfinite(value) else ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def rows_to_csv(columns, rows):
    """CSV text with a header row; ``rows`` are dicts keyed by ``columns``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def coeffs_to_csv(coeffs, index=None):
    """Columns ``n, re, im, abs2``, prefixed by ``index`` for a set of states."""
    columns = ["n", "re", "im", "abs2"]
    rows = []
    for n, c in enumerate(np.asarray(coeffs, dtype=complex)):
        rows.append({"n": n, "re": c.real, "im": c.imag, "abs2": abs(c) ** 2})
    if index is not None:
        columns = ["index"] + columns
        for row in rows:
            row["index"] = index
    return columns, rows


def matrix_to_json(mat):
    """Row-major nested lists of ``[re, im]`` pairs."""
    mat = np.asarray(mat, dtype=complex)
    return [[_pair(v) for v in row] for row in mat]


def matrix_to_csv(mat):
    """Columns ``row, col, re, im`` for the nonzero entries, row-major."""
    mat = np.asarray(mat, dtype=complex)
    rows = [
        {"row": i, "col": j, "re": mat[i, j].real, "im": mat[i, j].imag}
        for i, j in zip(*np.nonzero(mat))
    ]
    return rows_to_csv(["row", "col", "re", "im"], rows)
