"""Analytical return-interval densities and their normalization constants.

Three densities in the scaled interval ``R = r/<r>`` are provided:

* the exponential law of uncorrelated data, ``exp(-R)``;
* the power law times stretched exponential,
  ``gamma * g * R**(gamma-1) * exp(-g * R**gamma)`` with
  ``g = Gamma((1+gamma)/gamma)**gamma``, normalized on ``(0, inf)``;
* the same shape with a lower cutoff at ``s0 = 1/<r>``,
  ``B * r**(gamma-1) * exp(-(A/gamma) * r**gamma)``, whose constants
  follow from a one-dimensional root search (:func:`solve_constants`).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from ._backend import kernels
from .errors import DomainError, ParameterError, SolverError
from .special import log_upper_incomplete_gamma


def _check_gamma(gamma: float, *, closed: bool = True) -> None:
    ok = 0.0 < gamma <= 1.0 if closed else 0.0 < gamma < 1.0
    if not ok:
        interval = "(0, 1]" if closed else "(0, 1)"
        raise DomainError(f"gamma must lie in {interval}, got {gamma}")


@dataclass(frozen=True)
class GammaConstant:
    gamma: float
    g: float


@dataclass(frozen=True)
class TheoryParams:
    """Constants of the lower-cutoff density for one ``(gamma, <r>)`` pair.

    ``B == A * exp(p0)`` and ``p0 == A * s0**gamma / gamma`` by construction;
    ``residual`` is the relative mismatch of the transcendental equation at
    ``p0``.
    """

    gamma: float
    s0: float
    p0: float
    A: float
    B: float
    residual: float = 0.0

    @property
    def mean_r(self) -> float:
        return 1.0 / self.s0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mean_r"] = self.mean_r
        return d


def g_gamma(gamma: float) -> GammaConstant:
    _check_gamma(gamma)
    return GammaConstant(float(gamma), math.gamma((1.0 + gamma) / gamma) ** gamma)


def pdf_uncorrelated(R):
    R = np.asarray(R, dtype=np.float64)
    if np.any(R < 0):
        raise DomainError("R must be non-negative")
    return np.exp(-R)


def stretched_constants(gamma: float) -> tuple[float, float]:
    """``(A_c, B_c)`` making ``A_c exp(-B_c R**gamma)`` a unit-mean density."""
    _check_gamma(gamma)
    s = 1.0 / gamma
    # mean = Gamma(2s) / (Gamma(s) * B**s) = 1
    B_c = math.exp(gamma * (math.lgamma(2.0 * s) - math.lgamma(s)))
    A_c = gamma * B_c**s / math.gamma(s)
    return A_c, B_c


def pdf_stretched(R, gamma: float, A_c: float, B_c: float):
    _check_gamma(gamma)
    if not (A_c > 0 and B_c > 0):
        raise DomainError("A_c and B_c must be positive")
    R = np.asarray(R, dtype=np.float64)
    if np.any(R < 0):
        raise DomainError("R must be non-negative")
    return A_c * np.exp(-B_c * R**gamma)


def pdf_normalized(R, gamma: float):
    """Density with unit normalization and unit mean on ``(0, inf)``.

    Diverges like ``R**(gamma-1)`` at the origin, so ``R`` must be positive.
    """
    g = g_gamma(gamma).g
    R = np.asarray(R, dtype=np.float64)
    if np.any(R <= 0):
        raise DomainError("R must be positive")
    return gamma * g * R ** (gamma - 1.0) * np.exp(-g * R**gamma)


def log_pdf_normalized(R, gamma: float):
    g = g_gamma(gamma).g
    R = np.asarray(R, dtype=np.float64)
    if np.any(R <= 0):
        raise DomainError("R must be positive")
    return math.log(gamma * g) - (1.0 - gamma) * np.log(R) - g * R**gamma


def _log_tail_term(p: float, gamma: float) -> float:
    """``log(exp(p) * Gamma(1/gamma, p) / (gamma * p**(1/gamma)))``."""
    s = 1.0 / gamma
    return p + log_upper_incomplete_gamma(s, p) - math.log(gamma) - s * math.log(p)


def transcendental_rhs(p: float, gamma: float) -> float:
    """Right-hand side ``1 + exp(p) Gamma(1/gamma, p) / (gamma p**(1/gamma))``.

    Decreases monotonically from +inf (p -> 0) to 1 (p -> inf); the root
    ``p0`` is where it equals ``<r>``.
    """
    return 1.0 + math.exp(_log_tail_term(p, gamma))


def transcendental_residual(p: float, gamma: float, mean_r: float) -> float:
    """Relative mismatch ``|rhs(p) - <r>| / <r>``."""
    return abs(transcendental_rhs(p, gamma) - mean_r) / mean_r


def solve_constants(gamma: float, mean_r: float, *, method: str = "auto",
                    p_lo: float = 1e-12, p_hi: float = 1.0) -> TheoryParams:
    """Solve for ``p0`` and the constants ``A``, ``B`` given ``gamma`` and ``<r>``.

    ``method="auto"`` uses the closed form at ``gamma == 1``
    (``p0 = s0 / (1 - s0)``); ``"numeric"`` always runs the bracketed root
    search, which starts on ``[p_lo, p_hi]`` and widens geometrically until
    the bracket holds a sign change.
    """
    _check_gamma(gamma)
    if not (mean_r > 1.0) or not math.isfinite(mean_r):
        raise ParameterError(f"mean_r must exceed 1, got {mean_r}")
    if method not in ("auto", "numeric"):
        raise ParameterError(f"unknown method {method!r}")
    s0 = 1.0 / mean_r

    if method == "auto" and gamma == 1.0:
        p0 = 1.0 / (mean_r - 1.0)
    else:
        target = math.log(mean_r - 1.0)

        def h(p: float) -> float:
            return _log_tail_term(p, gamma) - target

        lo, hi = p_lo, p_hi
        while h(lo) < 0.0:
            lo *= 1e-3
            if lo < 1e-300:
                raise SolverError(f"no sign change for p in [{lo:g}, {hi:g}]")
        while h(hi) > 0.0:
            hi *= 2.0
            if hi > 1e8:
                raise SolverError(f"no sign change for p in [{lo:g}, {hi:g}]")
        p0 = brentq(h, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=500)

    A = gamma * p0 / s0**gamma
    B = A * math.exp(p0)
    res = transcendental_residual(p0, gamma, mean_r)
    return TheoryParams(float(gamma), s0, p0, A, B, res)


def pdf_cutoff(r, params: TheoryParams):
    """Lower-cutoff density on ``[s0, inf)``."""
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < params.s0):
        raise DomainError(f"r must be >= s0 = {params.s0}")
    g = params.gamma
    # B * exp(-(A/g) r^g) folded as A * exp(p0 - (A/g) r^g) to avoid overflow of B
    return params.A * r ** (g - 1.0) * np.exp(params.p0 - (params.A / g) * r**g)


def cutoff_cdf(r, params: TheoryParams):
    """Closed-form CDF of :func:`pdf_cutoff`; zero below ``s0``."""
    r = np.asarray(r, dtype=np.float64)
    g = params.gamma
    rc = np.maximum(r, params.s0)
    return -np.expm1(params.p0 - (params.A / g) * rc**g)


def sample_cutoff(params: TheoryParams, size: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws from :func:`pdf_cutoff`."""
    e = rng.standard_exponential(size)
    g = params.gamma
    return ((g / params.A) * (params.p0 + e)) ** (1.0 / g)


def asymptote_small_R(gamma: float) -> float:
    """Log-log slope of the density as ``R -> 0``: ``-(1 - gamma)``."""
    _check_gamma(gamma)
    return -(1.0 - gamma)


def asymptote_large_R(gamma: float) -> tuple[float, float]:
    """Stretched-exponential parameters ``(g, gamma)`` governing ``R >> 1``."""
    return g_gamma(gamma).g, float(gamma)


def generalized_harmonic(n: int, order: float) -> float:
    """``sum_{k=1..n} k**(-order)`` with compensated summation."""
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    return float(kernels.harmonic_sum(int(n), float(order)))


def harmonic_limit_check(gamma: float, m: int) -> float:
    """``sum_{k<m} k**(gamma-1) / m**gamma``, which tends to ``1/gamma``."""
    _check_gamma(gamma, closed=False)
    if m < 10:
        raise ParameterError(f"m must be at least 10, got {m}")
    return generalized_harmonic(m - 1, 1.0 - gamma) / float(m) ** gamma


def theory_curves(params: TheoryParams, R_min: float | None = None,
                  R_max: float = 10.0, points: int = 200) -> dict[str, np.ndarray]:
    """Both densities on a log-spaced grid starting at ``s0``."""
    lo = params.s0 if R_min is None else max(R_min, params.s0)
    R = np.geomspace(lo, R_max, points)
    return {
        "R": R,
        "pdf_normalized": pdf_normalized(R, params.gamma),
        "pdf_cutoff": pdf_cutoff(R, params),
    }
