"""Run configuration for the command-line front end.

Every default lives in :data:`DEFAULTS`; command-line flags override it.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .representation import RepresentationSpec
from .special import EXPONENT_MODES
from .states import DEFAULT_TAIL_TOL, MAX_TRUNCATION, ISParams

__all__ = ["ALGEBRAS", "DEFAULTS", "FORMATS", "METHODS", "SUBCOMMANDS", "RunConfig", "parse_grid"]

SUBCOMMANDS = ("gen", "verify", "spectrum", "sweep", "algebra-check")
ALGEBRAS = ("su11", "su2")
FORMATS = ("json", "csv")
METHODS = ("recurrence", "closed-form")

DEFAULTS = {
    "algebra": "su11",
    "k": 1.0,
    "j": 0.5,
    "q": 1.0,
    "lam": 0.5,
    "eta_re": 0.0,
    "eta_im": 0.0,
    "trunc": 512,
    "tail_tol": DEFAULT_TAIL_TOL,
    "realization": "symmetric",
    "exponent_mode": "auto",
    "method": "recurrence",
    "output_format": "json",
    "strict": False,
    "jobs": 1,
}


def parse_grid(text):
    """``start:stop:count`` (inclusive) or a single value, as a tuple of floats."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"grid must be a number or start:stop:count, got {text!r}") from None
    if count < 1:
        raise DomainError(f"grid count must be positive, got {count}")
    if count == 1:
        return (start,)
    return tuple(float(v) for v in np.linspace(start, stop, count))


@dataclass(frozen=True)
class RunConfig:
    """One command-line invocation, validated before any computation."""

    subcommand: str
    algebra: str = DEFAULTS["algebra"]
    k: float = DEFAULTS["k"]
    j: float = DEFAULTS["j"]
    q: float = DEFAULTS["q"]
    lam: float = DEFAULTS["lam"]
    eta_re: float = DEFAULTS["eta_re"]
    eta_im: float = DEFAULTS["eta_im"]
    trunc: int = DEFAULTS["trunc"]
    tail_tol: float = DEFAULTS["tail_tol"]
    realization: str = DEFAULTS["realization"]
    exponent_mode: str = DEFAULTS["exponent_mode"]
    method: str = DEFAULTS["method"]
    output_path: str | None = None
    output_format: str = DEFAULTS["output_format"]
    strict: bool = DEFAULTS["strict"]
    eta_index: int | None = None
    input_path: str | None = None
    lam_grid: tuple = field(default=())
    q_grid: tuple = field(default=())
    jobs: int = DEFAULTS["jobs"]

    def __post_init__(self):
        checks = [
            (self.subcommand in SUBCOMMANDS, f"subcommand must be one of {SUBCOMMANDS}"),
            (self.algebra in ALGEBRAS, f"algebra must be one of {ALGEBRAS}"),
            (self.output_format in FORMATS, f"format must be one of {FORMATS}"),
            (self.method in METHODS, f"method must be one of {METHODS}"),
            (self.exponent_mode == "auto" or self.exponent_mode in EXPONENT_MODES,
             f"exponent mode must be auto or one of {EXPONENT_MODES}"),
            (self.tail_tol > 0, "tail tolerance must be positive"),
            (2 <= self.trunc <= MAX_TRUNCATION, f"truncation must lie in [2, {MAX_TRUNCATION}]"),
            (self.jobs >= 1, "jobs must be at least 1"),
            (self.eta_index is None or self.eta_index >= 0, "eta index must be nonnegative"),
        ]
        for ok, message in checks:
            if not ok:
                raise DomainError(message)
        # building one spec and parameter set runs every module-level check
        for lam in self.lam_grid or (self.lam,):
            for q in self.q_grid or (self.q,):
                self.params(lam, q)

    @property
    def index(self):
        return self.k if self.algebra == "su11" else self.j

    @property
    def eta(self):
        return complex(self.eta_re, self.eta_im)

    @property
    def selected_exponent_mode(self):
        return None if self.exponent_mode == "auto" else self.exponent_mode

    def spec(self, q=None):
        q = self.q if q is None else q
        branch = "discrete_series" if self.algebra == "su11" else "spin"
        return RepresentationSpec(branch, self.index, self.trunc, q, self.realization)

    def params(self, lam=None, q=None):
        lam = self.lam if lam is None else lam
        return ISParams(lam, self.spec(q), self.eta)
