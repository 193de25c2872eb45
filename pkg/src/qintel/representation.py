"""Truncated matrix representations of su(1,1), su(2) and their q-deformations.

Basis index ``n`` runs over ``0 .. dim-1``. For the positive discrete series
it labels ``|n, k>`` with ``K0 = n + k``; for spin ``j`` it labels
``|j, n - j>`` with ``J0 = n - j``.

A ladder operator has one nonzero stripe. ``stripe[n]`` is the matrix element
between ``|n>`` and ``|n+1>``: ``<n+1|R|n>`` for a raising operator and
``<n|L|n+1>`` for a lowering one.

The discrete series is truncated by projection: the raising element out of
the last kept state is dropped, and every algebra check skips that last
row and column.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import DomainError
from .qnum import check_q, q_bracket, q_bracket_ratio

__all__ = [
    "BRANCHES",
    "REALIZATIONS",
    "AlgebraReport",
    "OperatorMatrix",
    "OperatorTriple",
    "RepresentationSpec",
    "build_q_deformed",
    "build_su11",
    "build_su2",
    "build_triple",
    "casimir_check",
    "casimir_value",
    "commutator_report",
    "hermiticity_report",
]

BRANCHES = ("discrete_series", "spin")
REALIZATIONS = ("undeformed", "dyson_paper", "symmetric")

_OFFSETS = {"diagonal": 0, "raising": -1, "lowering": 1}


@dataclass(frozen=True)
class RepresentationSpec:
    """Which representation to build.

    ``index`` is the Bargmann index ``k`` for the discrete series and the spin
    ``j`` for the spin branch. ``truncation`` is the number of kept states of
    the discrete series; the spin dimension is always ``2j + 1``.
    """

    branch: str
    index: float
    truncation: int = 512
    q: float = 1.0
    realization: str = "undeformed"

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise DomainError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        if self.realization not in REALIZATIONS:
            raise DomainError(f"realization must be one of {REALIZATIONS}, got {self.realization!r}")
        object.__setattr__(self, "q", check_q(self.q))
        object.__setattr__(self, "index", float(self.index))
        if self.realization == "undeformed" and self.q != 1.0:
            raise DomainError("the undeformed realization requires q = 1")
        if self.branch == "discrete_series":
            if not self.index > 0:
                raise DomainError(f"Bargmann index must be positive, got {self.index!r}")
            if int(self.truncation) != self.truncation or self.truncation < 2:
                raise DomainError(f"truncation must be an integer >= 2, got {self.truncation!r}")
            object.__setattr__(self, "truncation", int(self.truncation))
        else:
            two_j = 2.0 * self.index
            if not two_j >= 0 or two_j != round(two_j):
                raise DomainError(f"spin must be a nonnegative half-integer, got {self.index!r}")

    @property
    def dim(self):
        if self.branch == "spin":
            return int(round(2 * self.index)) + 1
        return self.truncation

    @property
    def truncated(self):
        return self.branch == "discrete_series"

    @property
    def deformed(self):
        return self.q != 1.0

    def with_truncation(self, truncation):
        return replace(self, truncation=truncation)


@dataclass(frozen=True)
class OperatorMatrix:
    """One diagonal or ladder operator stored as its single nonzero stripe."""

    stripe: np.ndarray
    role: str
    dim: int
    basis_offset: int = 0

    def __post_init__(self):
        if self.role not in _OFFSETS:
            raise DomainError(f"unknown role {self.role!r}")
        stripe = np.array(self.stripe, dtype=complex)
        expected = self.dim if self.role == "diagonal" else self.dim - 1
        if stripe.shape != (expected,):
            raise DomainError(f"{self.role} stripe must have length {expected}, got {stripe.shape}")
        if not np.all(np.isfinite(stripe)):
            raise DomainError("operator entries must be finite")
        stripe.setflags(write=False)
        object.__setattr__(self, "stripe", stripe)

    @property
    def offset(self):
        """Diagonal offset in numpy's convention: -1 is the subdiagonal."""
        return _OFFSETS[self.role]

    @cached_property
    def entries(self):
        mat = np.diag(self.stripe, self.offset)
        mat.setflags(write=False)
        return mat

    def apply(self, vec):
        vec = np.asarray(vec, dtype=complex)
        out = np.zeros(self.dim, dtype=complex)
        if self.role == "diagonal":
            out[:] = self.stripe * vec
        elif self.role == "raising":
            out[1:] = self.stripe * vec[:-1]
        else:
            out[:-1] = self.stripe * vec[1:]
        return out

    def dagger(self):
        role = {"diagonal": "diagonal", "raising": "lowering", "lowering": "raising"}[self.role]
        return OperatorMatrix(self.stripe.conj(), role, self.dim, self.basis_offset)


@dataclass(frozen=True)
class OperatorTriple:
    diag: OperatorMatrix
    raising: OperatorMatrix
    lowering: OperatorMatrix
    spec: RepresentationSpec = field(compare=False)

    def __iter__(self):
        return iter((self.diag, self.raising, self.lowering))


def _diag_values(spec):
    n = np.arange(spec.dim, dtype=float)
    if spec.branch == "discrete_series":
        return n + spec.index
    return n - spec.index


def _triple(spec, raise_stripe, lower_stripe):
    dim = spec.dim
    return OperatorTriple(
        OperatorMatrix(_diag_values(spec), "diagonal", dim),
        OperatorMatrix(raise_stripe, "raising", dim),
        OperatorMatrix(lower_stripe, "lowering", dim),
        spec,
    )


def _sqrt(radicand):
    radicand = np.asarray(radicand, dtype=float)
    if np.any(radicand < 0):
        raise ArithmeticError("negative radicand in a ladder matrix element")
    return np.sqrt(radicand)


def _sqrt_product(x, y):
    """sqrt(x * y), taking the roots first where the product overflows."""
    with np.errstate(over="ignore"):
        prod = x * y
    return np.where(np.isfinite(prod), _sqrt(prod), _sqrt(x) * _sqrt(y))


def _stripe_factors(spec):
    """(m, s) along the stripe: the undeformed element is sqrt(m * s)."""
    m = np.arange(1, spec.dim, dtype=float)
    if spec.branch == "discrete_series":
        s = m + 2 * spec.index - 1
    else:
        s = 2 * spec.index - m + 1
    return m, s


def build_su11(spec):
    """Positive discrete series of su(1,1), truncated to ``spec.truncation`` states."""
    if spec.branch != "discrete_series" or spec.realization != "undeformed":
        raise DomainError("build_su11 needs an undeformed discrete-series spec")
    m, s = _stripe_factors(spec)
    el = _sqrt(m * s)
    return _triple(spec, el, el)


def build_su2(spec):
    """Spin-j representation of su(2); exact, no truncation."""
    if spec.branch != "spin" or spec.realization != "undeformed":
        raise DomainError("build_su2 needs an undeformed spin spec")
    m, s = _stripe_factors(spec)
    el = _sqrt(m * s)
    return _triple(spec, el, el)


def build_q_deformed(spec):
    """q-deformed ladder operators in the Dyson or the symmetric realization.

    ``dyson_paper`` dresses the lowering element ``sqrt([m]_q s)`` and puts
    the extra factor ``[s]_q / s`` on the raising element only, so raising
    and lowering are not mutually adjoint for ``q != 1``. ``symmetric`` uses
    ``sqrt([m]_q [s]_q)`` on both. Here ``m = n + 1`` and ``s`` is
    ``n + 2k`` (discrete series) or ``2j - n`` (spin) for the stripe between
    ``|n>`` and ``|n+1>``.
    """
    if spec.realization not in ("dyson_paper", "symmetric"):
        raise DomainError("build_q_deformed needs the dyson_paper or symmetric realization")
    q = spec.q
    m, s = _stripe_factors(spec)
    if spec.realization == "symmetric":
        el = _sqrt_product(q_bracket(m, q), q_bracket(s, q))
        return _triple(spec, el, el)
    lower = _sqrt(q_bracket(m, q) * s)
    # [s]_q / s, continued to s = 0 where the square root already vanishes
    raising = lower * q_bracket_ratio(s, q)
    return _triple(spec, raising, lower)


def build_triple(spec):
    """Dispatch on branch and realization."""
    if spec.realization == "undeformed":
        return build_su11(spec) if spec.branch == "discrete_series" else build_su2(spec)
    return build_q_deformed(spec)


def _interior(spec):
    return slice(0, spec.dim - 1) if spec.truncated else slice(0, spec.dim)


def _maxabs(mat):
    return float(np.max(np.abs(mat))) if mat.size else 0.0


def _rel(residual, scale):
    r, s = _maxabs(residual), _maxabs(scale)
    return r / s if s > 0 else r


@dataclass(frozen=True)
class AlgebraReport:
    """Max-norm residuals of the commutation relations on interior states.

    Relative entries divide by the max-norm of the target; ``absolute`` holds
    the undivided values under the same keys.
    """

    diag_raise: float
    diag_lower: float
    raise_lower: float
    raise_lower_alt: float
    target: str
    alt_target: str
    absolute: dict


def commutator_report(triple, spec=None):
    """Check ``[D, R] = R``, ``[D, L] = -L`` and ``[R, L]`` against two targets.

    The primary target for ``[R, L]`` is ``-[2 D]_q`` (discrete series) or
    ``+[2 D]_q`` (spin), which is ``-2D`` / ``+2D`` at ``q = 1``. The
    alternative ``-2 [D]_q`` / ``+2 [D]_q`` is reported alongside so the
    two readings of the deformed relation can be compared.
    """
    spec = spec or triple.spec
    d, r, l = (op.entries for op in triple)
    keep = _interior(spec)
    block = (keep, keep)
    sign = -1.0 if spec.branch == "discrete_series" else 1.0
    dvals = np.real(np.diag(d))

    comm_dr = d @ r - r @ d - r
    comm_dl = d @ l - l @ d + l
    comm_rl = r @ l - l @ r
    target = np.diag(sign * q_bracket(2.0 * dvals, spec.q))
    alt = np.diag(sign * 2.0 * q_bracket(dvals, spec.q))

    absolute = {
        "diag_raise": _maxabs(comm_dr[block]),
        "diag_lower": _maxabs(comm_dl[block]),
        "raise_lower": _maxabs((comm_rl - target)[block]),
        "raise_lower_alt": _maxabs((comm_rl - alt)[block]),
    }
    s = "-" if sign < 0 else "+"
    return AlgebraReport(
        diag_raise=_rel(comm_dr[block], r[block]),
        diag_lower=_rel(comm_dl[block], l[block]),
        raise_lower=_rel((comm_rl - target)[block], target[block]),
        raise_lower_alt=_rel((comm_rl - alt)[block], alt[block]),
        target=f"{s}[2*Q0]_q",
        alt_target=f"{s}2*[Q0]_q",
        absolute=absolute,
    )


def hermiticity_report(triple, spec=None):
    """max |R - L^dagger|; zero for adjoint pairs."""
    return float(np.max(np.abs(triple.raising.stripe - triple.lowering.stripe.conj()), initial=0.0))


def casimir_value(spec):
    """k(k-1) for the discrete series, j(j+1) for spin."""
    c = spec.index
    return c * (c - 1.0) if spec.branch == "discrete_series" else c * (c + 1.0)


def casimir_check(triple, spec=None):
    """Relative max-norm residual of the Casimir identity (q = 1 only).

    Spin: ``J0 (J0 + 1) + J- J+ = j(j+1)``. Discrete series:
    ``K0 (K0 - 1) - K+ K- = k(k-1)`` on interior states. The residual is
    divided by the max-norm of the quadratic term ``D^2`` so it stays
    meaningful as the truncation grows.
    """
    spec = spec or triple.spec
    if spec.q != 1.0:
        raise DomainError("casimir_check is defined for the undeformed algebra only")
    d, r, l = (op.entries for op in triple)
    eye = np.eye(spec.dim)
    if spec.branch == "spin":
        resid = d @ (d + eye) + l @ r - casimir_value(spec) * eye
    else:
        resid = d @ (d - eye) - r @ l - casimir_value(spec) * eye
    keep = _interior(spec)
    return _rel(resid[keep, keep], (d @ d)[keep, keep])
