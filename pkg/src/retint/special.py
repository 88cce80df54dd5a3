"""Upper incomplete gamma function.

Power series for the lower function when ``x < s + 1`` and a modified
Lentz continued fraction for the upper function otherwise.
"""
from __future__ import annotations

import math
import sys

from .errors import DomainError, SolverError

_EPS = 1e-16
_TINY = sys.float_info.min / sys.float_info.epsilon
_MAX_ITER = 100_000


def _check(s: float, x: float) -> None:
    if not (s > 0.0) or not math.isfinite(s):
        raise DomainError(f"shape s must be positive and finite, got {s}")
    if not (x >= 0.0):
        raise DomainError(f"x must be non-negative, got {x}")


def lower_series(s: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(s, x)`` by its power series."""
    if x == 0.0:
        return 0.0
    term = 1.0 / s
    total = term
    ap = s
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(s * math.log(x) - x - math.lgamma(s))
    raise SolverError(f"incomplete gamma series did not converge for s={s}, x={x}")


def upper_fraction(s: float, x: float) -> float:
    """Continued fraction ``h`` with ``Gamma(s, x) = exp(-x) * x**s * h``."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise SolverError(f"incomplete gamma fraction did not converge for s={s}, x={x}")


def upper_incomplete_gamma(s: float, x: float) -> float:
    """``Gamma(s, x)``, the integral of ``t**(s-1) * exp(-t)`` from x to infinity."""
    _check(s, x)
    if x == 0.0:
        return math.gamma(s)
    if x < s + 1.0:
        return math.gamma(s) * (1.0 - lower_series(s, x))
    return math.exp(s * math.log(x) - x) * upper_fraction(s, x)


def log_upper_incomplete_gamma(s: float, x: float) -> float:
    """``log Gamma(s, x)``, safe where ``Gamma(s, x)`` itself over/underflows."""
    _check(s, x)
    if x == 0.0:
        return math.lgamma(s)
    if x < s + 1.0:
        return math.lgamma(s) + math.log1p(-lower_series(s, x))
    return s * math.log(x) - x + math.log(upper_fraction(s, x))


def lower_incomplete_gamma(s: float, x: float) -> float:
    """``gamma(s, x)``, the complement of :func:`upper_incomplete_gamma`."""
    _check(s, x)
    if x < s + 1.0:
        return math.gamma(s) * lower_series(s, x)
    return math.gamma(s) - upper_incomplete_gamma(s, x)
