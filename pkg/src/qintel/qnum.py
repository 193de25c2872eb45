"""q-number arithmetic.

The q-bracket ``[x]_q = (q**x - q**-x) / (q - 1/q)`` is evaluated as
``sinh(x h) / sinh(h)`` with ``h = ln q``, which is the same function without
the cancellation in the two differences. Within ``SERIES_THRESHOLD`` of
``q = 1`` a short Taylor expansion in ``h`` is used instead, so that ``q = 1``
itself is an ordinary input returning ``x``.

Results too large for a double saturate to +-inf.

Arrays are evaluated element by element with the scalar routine so that a
given ``(x, q)`` pair always produces the same bits, whatever the array
length.
"""
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "SERIES_THRESHOLD",
    "check_q",
    "q_bracket",
    "q_bracket_ratio",
]

# |q - 1| at or below this uses the expansion in ln(q)
SERIES_THRESHOLD = 1e-4

# |x ln q| above this is outside the range where five series terms suffice
_SERIES_MAX_ARG = 0.1


def check_q(q):
    """Validate a deformation parameter and return it as a float."""
    q = float(q)
    if not math.isfinite(q) or q <= 0.0:
        raise DomainError(f"deformation parameter must be a finite positive real, got {q!r}")
    return q


def _log_q(q):
    # q - 1 is exact for q in [0.5, 2], so log1p keeps full precision near 1
    return math.log1p(q - 1.0)


def _sinhc(t):
    """sinh(t)/t for |t| <= _SERIES_MAX_ARG."""
    t2 = t * t
    return 1.0 + t2 / 6.0 * (1.0 + t2 / 20.0 * (1.0 + t2 / 42.0 * (1.0 + t2 / 72.0)))


def _sinh_ratio(num, den):
    """sinh(num) / sinh(den), saturating to +-inf instead of raising."""
    try:
        return math.sinh(num) / math.sinh(den)
    except OverflowError:
        return math.copysign(math.inf, num * den)


def _bracket_direct(x, q):
    h = _log_q(q)
    return _sinh_ratio(x * h, h)


def _bracket_series(x, q):
    h = _log_q(q)
    if h == 0.0:
        return x
    if abs(x * h) > _SERIES_MAX_ARG:
        return _sinh_ratio(x * h, h)
    return x * _sinhc(x * h) / _sinhc(h)


def _ratio_scalar(x, q):
    h = _log_q(q)
    if h == 0.0:
        return 1.0
    if abs(q - 1.0) <= SERIES_THRESHOLD and abs(x * h) <= _SERIES_MAX_ARG:
        return _sinhc(x * h) / _sinhc(h)
    if x == 0.0:
        return h / math.sinh(h)
    return _sinh_ratio(x * h, h) / x


def _bracket_scalar(x, q):
    if abs(q - 1.0) <= SERIES_THRESHOLD:
        return _bracket_series(x, q)
    return _bracket_direct(x, q)


def _map(func, x, q):
    q = check_q(q)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("q-bracket argument must be finite")
    if arr.ndim == 0:
        return func(float(arr), q)
    out = np.array([func(v, q) for v in arr.ravel().tolist()], dtype=float)
    return out.reshape(arr.shape)


def q_bracket(x, q):
    """Return the q-number ``[x]_q``.

    ``x`` may be a scalar or array; ``q`` must be a positive real. At
    ``q = 1`` the result is ``x``.

    >>> q_bracket(2, 2.0)
    2.5
    """
    return _map(_bracket_scalar, x, q)


def q_bracket_ratio(x, q):
    """Return ``[x]_q / x``, continued to ``x = 0`` by its limit.

    The limit is ``2 ln(q) / (q - 1/q)`` for ``q != 1`` and 1 at ``q = 1``.
    Ladder-operator builders use this wherever an integer factor may vanish.
    """
    return _map(_ratio_scalar, x, q)
