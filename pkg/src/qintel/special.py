"""Terminating hypergeometric sums and Pollaczek polynomials.

Only the terminating case ``2F1(-n, b; c; z)`` is needed. Pochhammer symbols
are accumulated as running term ratios, so no complex log-gamma is involved.

The Pollaczek polynomials needed by the closed-form states have argument
``z = 2``, where the plain series alternates through terms of size ``~3**n``
and loses every significant digit by ``n ~ 30``. :func:`pollaczek` therefore
evaluates the same function through the connection formula

    2F1(-n, b; c; 2) = (c - b)_n / (c)_n * 2F1(-n, b; b - c - n + 1; -1)

whose terms stay polynomially bounded.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "EXPONENT_MODES",
    "Arbitration",
    "PollaczekArgs",
    "arbitrate_exponent_mode",
    "default_exponent_mode",
    "hyp2f1_terminating",
    "log_gamma_ratio",
    "pollaczek",
    "pollaczek_sequence",
    "recurrence_residuals",
]

EXPONENT_MODES = ("paper", "half")

_I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


@dataclass(frozen=True)
class PollaczekArgs:
    n: int
    z: complex
    idx: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.n!r}")
        if not self.idx > 0:
            raise DomainError(f"index must be positive, got {self.idx!r}")


def _is_nonpositive_integer(c):
    c = complex(c)
    return c.imag == 0.0 and c.real <= 0.0 and c.real == math.floor(c.real)


def _terms(n, b, c, z, extra=0):
    """Running products t_m = (-n)_m (b)_m / ((c)_m m!) z^m for m = 0..n+extra."""
    terms = np.empty(n + 1 + extra, dtype=complex)
    t = 1.0 + 0.0j
    terms[0] = t
    for m in range(n + extra):
        t = t * ((-n + m) * (b + m) / ((c + m) * (m + 1))) * z
        terms[m + 1] = t
    return terms


def hyp2f1_terminating(n, b, c, z, *, extra_terms=0):
    """Sum ``2F1(-n, b; c; z)``, which has exactly ``n + 1`` nonzero terms.

    ``extra_terms`` appends terms past the natural end of the series; they
    carry the factor ``(-n)_m = 0`` and exist only so tests can observe the
    termination.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    if _is_nonpositive_integer(c):
        raise DomainError(f"c = {c!r} is a pole of the hypergeometric series")
    terms = _terms(int(n), complex(b), complex(c), z, extra_terms)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def log_gamma_ratio(n, c):
    """ln((c)_n / n!) = ln Gamma(n+c) - ln Gamma(c) - ln n!."""
    if not c > 0:
        raise DomainError(f"c must be positive, got {c!r}")
    return math.lgamma(n + c) - math.lgamma(c) - math.lgamma(n + 1)


def _hyp2f1_at_two(n, b, c):
    """2F1(-n, b; c; 2) through the reflection to argument -1."""
    c_ref = b - c - n + 1
    if n == 0:
        return 1.0 + 0.0j
    if _is_nonpositive_integer(c_ref) and -c_ref.real < n:
        # a zero denominator would appear inside the finite sum
        return hyp2f1_terminating(n, b, c, 2.0)
    pref = 1.0 + 0.0j
    for m in range(n):
        pref *= (c - b + m) / (c + m)
    terms = _terms(n, b, c_ref, -1.0)
    # exact summation; the alternating terms are otherwise the dominant error
    return pref * complex(math.fsum(terms.real), math.fsum(terms.imag))


def _exponent(n, mode):
    if mode == "paper":
        return n / 2.0
    if mode == "half":
        return 0.5
    raise DomainError(f"exponent_mode must be one of {EXPONENT_MODES}, got {mode!r}")


def pollaczek(args, exponent_mode="half"):
    """Evaluate ``i^n * w_n**p * 2F1(-n, k + i z; 2k; 2)``, ``w_n = (2k)_n / n!``.

    ``p`` is ``n/2`` in ``"paper"`` mode and ``1/2`` in ``"half"`` mode. Only
    ``"half"`` reproduces the three-term recurrence

        1/2 sqrt((n+1)(n+2k)) d[n+1] + 1/2 sqrt(n(n+2k-1)) d[n-1] = z d[n]

    (see ``tests/test_special.py::test_exponent_mode_arbitration``).
    """
    n, z, k = args.n, complex(args.z), float(args.idx)
    p = _exponent(n, exponent_mode)
    weight = math.exp(p * log_gamma_ratio(n, 2.0 * k))
    return _I_POWERS[n % 4] * weight * _hyp2f1_at_two(n, complex(k, 0.0) + 1j * z, 2.0 * k)


def pollaczek_sequence(n_max, z, idx, exponent_mode="half"):
    """Values ``d_0 .. d_{n_max}`` at a fixed ``(z, idx)``."""
    return np.array(
        [pollaczek(PollaczekArgs(n, z, idx), exponent_mode) for n in range(n_max + 1)],
        dtype=complex,
    )


def recurrence_residuals(d, z, idx):
    """Scaled residuals of the Pollaczek recurrence along ``d_0 .. d_N``.

    Entry ``n`` (for ``n = 0 .. N-1``) is the recurrence defect at degree ``n``
    divided by ``max(|d[n-1]|, |d[n]|, |d[n+1]|)``.
    """
    d = np.asarray(d, dtype=complex)
    out = np.empty(len(d) - 1)
    for n in range(len(d) - 1):
        prev = d[n - 1] if n > 0 else 0.0
        defect = (
            0.5 * math.sqrt((n + 1) * (n + 2 * idx)) * d[n + 1]
            + 0.5 * math.sqrt(n * (n + 2 * idx - 1)) * prev
            - z * d[n]
        )
        scale = max(abs(prev), abs(d[n]), abs(d[n + 1]))
        out[n] = abs(defect) / scale if scale > 0 else abs(defect)
    return out


@dataclass(frozen=True)
class Arbitration:
    winner: str
    worst_residual: dict
    passed: dict


def arbitrate_exponent_mode(samples=100, n_max=50, tol=1e-9, seed=20240519):
    """Decide which exponent mode solves the Pollaczek recurrence.

    Both modes are tried on ``samples`` random ``(z, k)`` pairs up to degree
    ``n_max``; a mode passes when every scaled residual is below ``tol``.
    Raises if the outcome is not exactly one passing mode.
    """
    rng = np.random.default_rng(seed)
    worst = {mode: 0.0 for mode in EXPONENT_MODES}
    for _ in range(samples):
        z = complex(rng.uniform(-2.5, 2.5), rng.uniform(-0.5, 0.5))
        k = float(rng.uniform(0.25, 4.0))
        for mode in EXPONENT_MODES:
            d = pollaczek_sequence(n_max, z, k, mode)
            worst[mode] = max(worst[mode], float(recurrence_residuals(d, z, k).max()))
    passed = {mode: worst[mode] < tol for mode in EXPONENT_MODES}
    winners = [mode for mode in EXPONENT_MODES if passed[mode]]
    if len(winners) != 1:
        raise RuntimeError(f"exponent-mode arbitration is ambiguous: {worst}")
    return Arbitration(winners[0], worst, passed)


@lru_cache(maxsize=None)
def default_exponent_mode():
    """The arbitrated exponent mode, computed once per process."""
    return arbitrate_exponent_mode().winner
