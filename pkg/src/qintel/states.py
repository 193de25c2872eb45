"""Intelligent states: construction by three routes, and verification.

An intelligent state for the pair ``(X1, X2)`` solves

    (X1 - i lam X2) psi = eta psi,   lam > 0,

with ``X1 = (R + L)/2`` and ``X2 = (R - L)/(2i)`` built from the raising
and lowering operators. In ladder form this is ``(alpha L + beta R) psi =
2 eta psi`` with ``alpha = 1 + lam`` and ``beta = 1 - lam``; see
:func:`eigen_operator`, the one place the orientation is fixed.

Routes:

* :func:`solve_recurrence` runs the three-term coefficient recurrence
  forward from ``c_0 = 1``. It is the authoritative constructor.
* :func:`solve_closed_form` evaluates the Pollaczek / 2F1 closed form.
* :func:`solve_by_diagonalization` diagonalizes the truncated operator.
* :func:`solve_by_nullspace` takes the SVD null vector of the interior rows
  of ``A - 2 eta`` at a prescribed ``eta``.
"""
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, DomainError
from .qnum import q_bracket, q_bracket_ratio
from .representation import RepresentationSpec, build_triple
from .special import PollaczekArgs, default_exponent_mode, pollaczek

__all__ = [
    "DEFAULT_TAIL_TOL",
    "MAX_DIAG_DIM",
    "MAX_TRUNCATION",
    "ISParams",
    "StateVector",
    "VerificationReport",
    "closed_form_deviation",
    "eigen_operator",
    "eigen_residual",
    "overlap",
    "recurrence_coefficients",
    "representable_dim",
    "require_converged",
    "solve_by_diagonalization",
    "solve_by_nullspace",
    "solve_closed_form",
    "solve_recurrence",
    "verify",
]

DEFAULT_TAIL_TOL = 1e-12
MAX_TRUNCATION = 4096
MAX_DIAG_DIM = 5000

# magnitudes above this are rescaled during the forward recurrence
_RESCALE_AT = 1e150

# ladder elements above this are treated as unrepresentable (mat-vecs overflow)
_ENTRY_MAX = 1e150


@dataclass(frozen=True)
class ISParams:
    """One intelligent-state problem: ``lam``, ``eta`` and the representation."""

    lam: float
    spec: RepresentationSpec
    eta: complex = 0j
    alpha: float = field(init=False)
    beta: float = field(init=False)

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= 0:
            raise DomainError(f"lambda must be a finite positive real, got {self.lam!r}")
        eta = complex(self.eta)
        if not (math.isfinite(eta.real) and math.isfinite(eta.imag)):
            raise DomainError(f"eta must be finite, got {self.eta!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "alpha", 1.0 + lam)
        object.__setattr__(self, "beta", 1.0 - lam)

    def with_eta(self, eta):
        return replace(self, eta=eta)

    def with_spec(self, spec):
        return replace(self, spec=spec)


@dataclass(frozen=True)
class StateVector:
    """Normalized coefficients ``c_n`` on the basis of ``spec``.

    ``norm_sq_inverse`` is ``sum |c_n|^2`` before normalization, with the
    unnormalized ``c_0`` equal to 1 for the recurrence and closed form
    (so it is ``|c_0|^-2`` of the normalized state). ``tail`` is
    ``|c_{N-2}|^2 + |c_{N-1}|^2`` for the discrete series and 0 for spin.
    """

    coeffs: np.ndarray
    spec: RepresentationSpec
    eta: complex
    norm_sq_inverse: float
    tail: float
    converged: bool
    method: str

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "eta", complex(self.eta))


@dataclass(frozen=True)
class VerificationReport:
    """Eigen-residual and uncertainty metrics of one state.

    Uncertainty fields are ``None`` when the ladder pair of the realization
    is not mutually adjoint (Dyson realization at ``q != 1``); the residual
    against the symmetric realization is then also reported.
    """

    eigen_residual: float
    var_x1: float | None
    var_x2: float | None
    commutator_expectation: complex | None
    saturation_gap: float | None
    saturation_gap_rel: float | None
    squeezed_x1: bool | None
    squeezed_x2: bool | None
    lambda_ratio_check: float | None
    partition_residual: float | None
    eigen_residual_symmetric: float | None
    tail: float
    converged: bool

    @property
    def uncertainty_applicable(self):
        return self.var_x1 is not None

    def to_dict(self):
        return asdict(self)


def eigen_operator(params, triple=None):
    """Return ``psi -> (alpha L + beta R) psi`` for the realization of ``params``.

    alpha sits on the lowering operator for both branches. This is the
    expansion of ``X1 - i lam X2`` and the orientation of every coefficient
    recurrence used here; with alpha on the raising operator instead, the
    discrete-series solutions grow like ``(alpha/beta)**(n/2)`` and are not
    normalizable for ``lam > 0``.
    """
    triple = triple or build_triple(params.spec)
    a, b = params.alpha, params.beta

    def apply(vec):
        return a * triple.lowering.apply(vec) + b * triple.raising.apply(vec)

    return apply


def _eigen_matrix(params, triple):
    return params.alpha * triple.lowering.entries + params.beta * triple.raising.entries


def eigen_residual(vec, params, triple=None):
    """``||(alpha L + beta R) psi - 2 eta psi|| / ||psi||``."""
    vec = np.asarray(vec, dtype=complex)
    resid = eigen_operator(params, triple)(vec) - 2.0 * params.eta * vec
    return float(np.linalg.norm(resid) / np.linalg.norm(vec))


def recurrence_coefficients(spec, n_terms):
    """Coefficients of the recurrence ``lo[n] c[n+1] + up[n-1] c[n-1]``.

    ``lo[n]`` multiplies ``c_{n+1}`` in row ``n`` (the lowering element out of
    ``|n+1>``) and ``up[n]`` multiplies ``c_n`` in row ``n+1`` (the raising
    element out of ``|n>``), for ``n = 0 .. n_terms - 2``. Written out from the
    ket actions so the recurrence does not share code with the matrix builders.
    """
    q = spec.q
    m = np.arange(1, n_terms, dtype=float)
    s = m + 2 * spec.index - 1 if spec.branch == "discrete_series" else 2 * spec.index - m + 1
    if spec.realization == "undeformed":
        lo = np.sqrt(m * s)
        return lo, lo
    if spec.realization == "symmetric":
        bm, bs = q_bracket(m, q), q_bracket(s, q)
        with np.errstate(over="ignore"):
            prod = bm * bs
        lo = np.where(np.isfinite(prod), np.sqrt(prod), np.sqrt(bm) * np.sqrt(bs))
        return lo, lo
    with np.errstate(over="ignore"):
        lo = np.sqrt(q_bracket(m, q) * s)
        return lo, lo * q_bracket_ratio(s, q)


def _phase_fix(coeffs):
    mags = np.abs(coeffs)
    top = mags.max()
    if top == 0:
        return coeffs
    first = int(np.argmax(mags > 1e-12 * top))
    return coeffs * (abs(coeffs[first]) / coeffs[first])


def _tail(coeffs, spec):
    if spec.branch == "spin":
        return 0.0
    return float(np.sum(np.abs(coeffs[-2:]) ** 2))


def _finish(raw, log_scale, spec, eta, method, tail_tol):
    """Normalize, fix the phase and measure the tail of raw coefficients."""
    norm_sq = float(np.vdot(raw, raw).real)
    coeffs = _phase_fix(raw / math.sqrt(norm_sq))
    try:
        nsi = math.exp(2.0 * log_scale) * norm_sq
    except OverflowError:
        nsi = math.inf
    tail = _tail(coeffs, spec)
    return StateVector(coeffs, spec, eta, nsi, tail, tail < tail_tol, method)


def _run_recurrence(params, dim):
    spec = params.spec
    lo, up = recurrence_coefficients(spec, dim)
    a, b, two_eta = params.alpha, params.beta, 2.0 * params.eta
    c = np.zeros(dim, dtype=complex)
    c[0] = 1.0
    log_scale = 0.0
    for n in range(dim - 1):
        lead = a * lo[n]
        if lead == 0:
            raise ArithmeticError(f"vanishing leading coefficient at n={n}")
        rhs = two_eta * c[n]
        if n > 0:
            rhs -= b * up[n - 1] * c[n - 1]
        c[n + 1] = rhs / lead
        mag = abs(c[n + 1])
        if mag > _RESCALE_AT:
            c[: n + 2] /= mag
            log_scale += math.log(mag)
    return c, log_scale


def representable_dim(spec, upto):
    """Largest dimension <= ``upto`` whose ladder elements stay below 1e150."""
    lo, up = recurrence_coefficients(spec, upto)
    bad = ~((np.abs(lo) <= _ENTRY_MAX) & (np.abs(up) <= _ENTRY_MAX))
    return int(np.argmax(bad)) + 1 if bad.any() else upto


def solve_recurrence(params, *, tail_tol=DEFAULT_TAIL_TOL, auto_extend=True, max_truncation=MAX_TRUNCATION):
    """Build the state by forward recurrence from ``c_0 = 1``.

    Row ``n`` of ``(alpha L + beta R) c = 2 eta c`` reads

        alpha * lo[n] * c[n+1] + beta * up[n-1] * c[n-1] = 2 eta c[n].

    Spin stops at ``n = 2j`` (the last row then only holds for admissible
    ``eta``). The discrete series runs to the truncation and, with
    ``auto_extend``, doubles it up to ``max_truncation`` until the tail is
    below ``tail_tol``. Truncation and extension are both capped where the
    ladder elements exceed 1e150 (strong deformation, large ``n``); the
    returned state's ``spec`` records the dimension actually used. A state
    that never converges is returned flagged.
    """
    spec = params.spec
    ceiling = spec.dim
    if spec.truncated:
        ceiling = representable_dim(spec, max(max_truncation, spec.dim))
        if ceiling < spec.dim:
            # strongly deformed elements overflow first: start at the cap
            spec = spec.with_truncation(ceiling)
            params = params.with_spec(spec)
    while True:
        raw, log_scale = _run_recurrence(params, spec.dim)
        state = _finish(raw, log_scale, spec, params.eta, "recurrence", tail_tol)
        if state.converged or not auto_extend or not spec.truncated or spec.dim >= ceiling:
            return state
        spec = spec.with_truncation(min(2 * spec.dim, ceiling))
        params = params.with_spec(spec)


def _closed_form_factors(params, n):
    """Per-degree (alpha_q, beta_q) of the closed form."""
    spec, q = params.spec, params.spec.q
    a_q = params.alpha * math.sqrt(q_bracket_ratio(n + 1, q))
    if spec.branch == "discrete_series":
        b_q = params.beta * math.sqrt(q_bracket_ratio(n, q)) * q_bracket_ratio(n + 2 * spec.index - 1, q)
    else:
        b_q = params.beta * math.sqrt(q_bracket_ratio(n, q)) / q_bracket_ratio(2 * spec.index - n + 1, q)
    return a_q, b_q


def solve_closed_form(params, *, exponent_mode=None, tail_tol=DEFAULT_TAIL_TOL):
    """Closed-form coefficients ``c_n = (beta_q/alpha_q)**(n/2) * d_n``.

    ``d_n`` is the Pollaczek polynomial of degree ``n`` at
    ``z = eta / sqrt(alpha_q beta_q)`` and index ``k`` (or ``j``). For
    ``q != 1`` the factors ``alpha_q``, ``beta_q`` depend on ``n`` and are
    evaluated degree by degree, so ``z`` varies with ``n`` as well. At
    ``q = 1`` this reproduces :func:`solve_recurrence` for the discrete
    series; otherwise compare with :func:`closed_form_deviation`.
    """
    spec = params.spec
    if params.beta <= 0:
        raise DomainError(
            "closed form needs alpha_q * beta_q > 0 (lambda < 1); use solve_recurrence instead"
        )
    mode = exponent_mode or default_exponent_mode()
    dim = spec.dim
    log_mag = np.full(dim, -np.inf)
    phase = np.ones(dim, dtype=complex)
    for n in range(dim):
        a_q, b_q = _closed_form_factors(params, n)
        log_geo = 0.5 * n * math.log(b_q / a_q)
        if n > 0 and log_geo < np.max(log_mag) - 800.0:
            # exp() of this relative to the peak underflows to zero anyway
            continue
        z = params.eta / math.sqrt(a_q * b_q)
        d = pollaczek(PollaczekArgs(n, z, spec.index), mode)
        if d == 0:
            continue
        log_mag[n] = log_geo + math.log(abs(d))
        phase[n] = d / abs(d)
    peak = float(np.max(log_mag))
    raw = np.where(np.isfinite(log_mag), np.exp(log_mag - peak), 0.0) * phase
    return _finish(raw, peak, spec, params.eta, "closed_form", tail_tol)


def solve_by_diagonalization(params, *, tail_tol=DEFAULT_TAIL_TOL):
    """All eigenpairs ``(eta, state)`` of the truncated ``alpha L + beta R``.

    ``params.eta`` is ignored. The matrix is non-normal, so a general
    complex eigensolver is used. Pairs are ordered by ``(Re eta, Im eta)``;
    spin returns exactly ``2j + 1`` of them.
    """
    spec = params.spec
    if spec.dim > MAX_DIAG_DIM:
        raise DomainError(f"diagonalization limited to dimension {MAX_DIAG_DIM}, got {spec.dim}")
    triple = build_triple(spec)
    mat = _eigen_matrix(params, triple)
    try:
        evals, evecs = scipy.linalg.eig(mat)
    except (np.linalg.LinAlgError, ValueError) as exc:
        cond = np.linalg.cond(mat)
        raise np.linalg.LinAlgError(f"eigensolver failed (condition number {cond:.3e}): {exc}") from exc
    etas = evals / 2.0
    order = np.lexsort((etas.imag, etas.real))
    pairs = []
    for i in order:
        eta = complex(etas[i])
        pairs.append((eta, _finish(evecs[:, i], 0.0, spec, eta, "diagonalization", tail_tol)))
    return pairs


def solve_by_nullspace(params, *, tail_tol=DEFAULT_TAIL_TOL):
    """Null vector of the interior rows of ``alpha L + beta R - 2 eta``.

    For the discrete series the last row (the truncation boundary) is
    dropped, leaving an ``(N-1) x N`` system whose one-dimensional null space
    is the intelligent state at the prescribed ``eta``. For spin the full
    square matrix is used and the right singular vector of the smallest
    singular value is returned.
    """
    spec = params.spec
    if spec.dim > MAX_DIAG_DIM:
        raise DomainError(f"SVD limited to dimension {MAX_DIAG_DIM}, got {spec.dim}")
    triple = build_triple(spec)
    mat = _eigen_matrix(params, triple) - 2.0 * params.eta * np.eye(spec.dim)
    if spec.truncated:
        mat = mat[:-1, :]
    _, _, vh = scipy.linalg.svd(mat)
    vec = vh[-1].conj()
    return _finish(vec, 0.0, spec, params.eta, "nullspace", tail_tol)


def _pad(a, n):
    out = np.zeros(n, dtype=complex)
    out[: len(a)] = a
    return out


def overlap(a, b):
    """``|<a|b>|^2 / (<a|a><b|b>)`` for states or coefficient arrays."""
    a = np.asarray(getattr(a, "coeffs", a), dtype=complex)
    b = np.asarray(getattr(b, "coeffs", b), dtype=complex)
    n = max(len(a), len(b))
    a, b = _pad(a, n), _pad(b, n)
    return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))


def closed_form_deviation(params, n_max=30, *, exponent_mode=None):
    """Largest disagreement of successive-coefficient ratios, closed form vs recurrence.

    For each ``n < n_max`` the pairs ``(c_n, c_{n+1})`` of the two states are
    compared by the sine of the angle between them,
    ``|a_{n+1} b_n - a_n b_{n+1}| / (|(a_n, a_{n+1})| |(b_n, b_{n+1})|)``,
    which equals the relative difference of the ratios ``c_{n+1}/c_n`` when
    both are defined and stays finite where a coefficient vanishes.
    """
    spec = params.spec
    small = spec if not spec.truncated else spec.with_truncation(max(n_max + 2, 2))
    p = params.with_spec(small)
    a = solve_closed_form(p, exponent_mode=exponent_mode).coeffs
    b = solve_recurrence(p, auto_extend=False).coeffs
    worst = 0.0
    for n in range(min(n_max, len(a) - 1)):
        cross = abs(a[n + 1] * b[n] - a[n] * b[n + 1])
        na = math.hypot(abs(a[n]), abs(a[n + 1]))
        nb = math.hypot(abs(b[n]), abs(b[n + 1]))
        if na == 0 or nb == 0:
            continue
        worst = max(worst, cross / (na * nb))
    return worst


def verify(state, params):
    """Measure how well ``state`` solves the problem ``params``."""
    spec = state.spec
    params = params.with_spec(spec)
    triple = build_triple(spec)
    psi = state.coeffs / np.linalg.norm(state.coeffs)
    resid = eigen_residual(psi, params, triple)

    adjoint = not (spec.realization == "dyson_paper" and spec.deformed)
    if not adjoint:
        sym_spec = replace(spec, realization="symmetric")
        sym_resid = eigen_residual(psi, params.with_spec(sym_spec))
        return VerificationReport(
            resid, None, None, None, None, None, None, None, None, None, sym_resid, state.tail, state.converged
        )

    rpsi, lpsi = triple.raising.apply(psi), triple.lowering.apply(psi)
    x1 = (rpsi + lpsi) / 2.0
    x2 = (rpsi - lpsi) / 2.0j
    mean1 = np.vdot(psi, x1).real
    mean2 = np.vdot(psi, x2).real
    var1 = float(np.linalg.norm(x1 - mean1 * psi) ** 2)
    var2 = float(np.linalg.norm(x2 - mean2 * psi) ** 2)
    comm = complex(np.vdot(x1, x2) - np.vdot(x2, x1))
    half_c = abs(comm) / 2.0
    bound = half_c**2
    gap = abs(var1 * var2 - bound)
    gap_rel = gap / bound if bound > 0 else math.inf
    lam = params.lam
    if half_c > 0:
        partition = max(abs(var1 - lam * half_c) / (lam * half_c), abs(var2 - half_c / lam) / (half_c / lam))
    else:
        partition = math.inf
    ratio = abs(var1 / var2 - lam**2) if var2 > 0 else math.inf
    return VerificationReport(
        eigen_residual=resid,
        var_x1=var1,
        var_x2=var2,
        commutator_expectation=comm,
        saturation_gap=gap,
        saturation_gap_rel=gap_rel,
        squeezed_x1=bool(var1 < half_c),
        squeezed_x2=bool(var2 < half_c),
        lambda_ratio_check=ratio,
        partition_residual=partition,
        eigen_residual_symmetric=None,
        tail=state.tail,
        converged=state.converged,
    )


def require_converged(state):
    """Raise :class:`ConvergenceError` for a non-converged state."""
    if not state.converged:
        raise ConvergenceError(
            f"tail {state.tail:.3e} above tolerance at truncation {state.spec.dim}"
        )
    return state
