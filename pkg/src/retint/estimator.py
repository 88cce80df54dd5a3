"""Empirical interval densities, small-R slopes and goodness of fit."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EstimationError, InsufficientEventsError, ParameterError
from .extremes import binarize, return_intervals
from .generator import _linfit_slope, _values
from .theory import TheoryParams, cutoff_cdf, pdf_cutoff, pdf_normalized

MIN_SAMPLES = 100
MIN_FIT_BINS = 5


@dataclass(frozen=True)
class Histogram:
    """Log-binned density; ``sum(density * diff(edges)) == 1``.

    For integer-valued intervals (``lattice=True``) the edges fall on
    multiples of ``1/<r>`` so that each bin holds a whole number of lattice
    points, and ``centers`` are taken over the half-step shifted cells.
    """

    edges: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    n_total: int
    lattice: bool = False

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        lo, hi = self.edges[:-1], self.edges[1:]
        if self.lattice:
            half = 0.5 * self.edges[0]
            lo, hi = lo - half, hi - half
        return np.sqrt(lo * hi)

    def mass(self) -> float:
        return float(np.sum(self.density * self.widths))


@dataclass(frozen=True)
class SlopeEstimate:
    """Small-R power-law slope ``s_m``; ``theta = s_m / (gamma - 1)``.

    A sweep point without enough data carries ``reason`` and nan values.
    """

    s_m: float
    stderr: float
    fit_range: tuple[float, float]
    q: float = math.nan
    gamma: float = math.nan
    n_bins: int = 0
    mean_r: float = math.nan
    n_intervals: int = 0
    reason: str | None = None

    @property
    def theta(self) -> float:
        return self.s_m / (self.gamma - 1.0)

    @property
    def ok(self) -> bool:
        return self.reason is None


def _is_lattice(scaled: np.ndarray, mean_r: float) -> bool:
    r = scaled * mean_r
    return bool(np.all(np.abs(r - np.rint(r)) < 1e-6 * np.maximum(1.0, r)))


def log_binned_histogram(scaled, bins_per_decade: int = 10, mean_r: float | None = None,
                         lattice: bool | None = None) -> Histogram:
    """Density of scaled intervals on log-spaced bins starting at ``s0 = 1/mean_r``.

    ``mean_r`` defaults to ``1/min(scaled)``. ``lattice=None`` auto-detects
    integer-valued intervals. Trailing empty bins are dropped.
    """
    x = np.asarray(scaled, dtype=np.float64)
    if x.shape[0] < MIN_SAMPLES:
        raise EstimationError(f"need at least {MIN_SAMPLES} samples", usable=int(x.shape[0]))
    if not (4 <= bins_per_decade <= 20):
        raise ParameterError(f"bins_per_decade must be in [4, 20], got {bins_per_decade}")
    if mean_r is None:
        mean_r = 1.0 / float(x.min())
    if not mean_r > 0:
        raise ParameterError(f"mean_r must be positive, got {mean_r}")
    s0 = 1.0 / mean_r
    if x.min() < s0 * (1.0 - 1e-12):
        raise ParameterError(f"samples lie below the support start s0 = {s0}")
    # absorb rounding in 1/mean_r so the smallest sample is never dropped
    s0 = min(s0, float(x.min()))
    if lattice is None:
        lattice = _is_lattice(x, mean_r)

    top = float(x.max())
    n_bins = max(1, int(math.floor(bins_per_decade * math.log10(max(top / s0, 1.0)) + 1e-9)) + 1)
    edges = s0 * 10.0 ** (np.arange(n_bins + 1) / bins_per_decade)
    if lattice:
        k = np.unique(np.ceil(edges * mean_r - 1e-9))
        if k[-1] <= np.rint(top * mean_r):
            k = np.append(k, np.rint(top * mean_r) + 1)
        edges = k / mean_r
        edges[0] = s0
    counts, _ = np.histogram(x, edges)
    nz = np.flatnonzero(counts)
    last = int(nz[-1]) + 1
    counts = counts[:last]
    edges = edges[: last + 1]
    n = x.shape[0]
    density = counts / (n * np.diff(edges))
    return Histogram(edges, density, counts, int(n), bool(lattice))


def default_fit_range(s0: float) -> tuple[float, float]:
    return 3.0 * s0, 0.3


def fit_powerlaw_slope(hist: Histogram, fit_range: tuple[float, float] | None = None,
                       *, gamma: float = math.nan, q: float = math.nan) -> SlopeEstimate:
    """Least-squares slope of log density against log bin centre.

    Uses nonempty bins whose centre lies in ``fit_range`` (default
    ``[3 s0, 0.3]``); the upper end may not exceed 1.
    """
    s0 = float(hist.edges[0])
    lo, hi = default_fit_range(s0) if fit_range is None else map(float, fit_range)
    if hi > 1.0:
        raise ParameterError(f"fit range must stay below R = 1, got upper end {hi}")
    c = hist.centers
    sel = (c >= lo) & (c <= hi) & (hist.counts > 0)
    k = int(sel.sum())
    if k < MIN_FIT_BINS:
        raise EstimationError(f"need at least {MIN_FIT_BINS} nonempty bins in [{lo:g}, {hi:g}]",
                              usable=k)
    slope, stderr = _linfit_slope(np.log(c[sel]), np.log(hist.density[sel]))
    return SlopeEstimate(slope, stderr, (lo, hi), q=q, gamma=gamma, n_bins=k,
                         mean_r=1.0 / s0, n_intervals=hist.n_total)


def _sweep_point(x: np.ndarray, gamma: float, q: float, bins_per_decade: int,
                 fit_range, min_intervals: int) -> SlopeEstimate:
    def missing(reason, mean_r=math.nan, n=0):
        return SlopeEstimate(math.nan, math.nan, (math.nan, math.nan), q=q, gamma=gamma,
                             mean_r=mean_r, n_intervals=n, reason=reason)

    try:
        iv = return_intervals(binarize(x, q))
    except InsufficientEventsError as exc:
        return missing(f"only {exc.n_events} events")
    if iv.n_intervals < min_intervals:
        return missing(f"only {iv.n_intervals} intervals", iv.mean_r, iv.n_intervals)
    hist = log_binned_histogram(iv.scaled(), bins_per_decade, iv.mean_r)
    fr = fit_range(iv.s0) if callable(fit_range) else fit_range
    try:
        est = fit_powerlaw_slope(hist, fr, gamma=gamma, q=q)
    except (EstimationError, ParameterError) as exc:
        return missing(str(exc), iv.mean_r, iv.n_intervals)
    return est


def sweep_threshold(series, q_grid, *, gamma: float | None = None, bins_per_decade: int = 10,
                    fit_range=None, min_intervals: int = MIN_SAMPLES,
                    jobs: int = 1) -> list[SlopeEstimate]:
    """Small-R slope for each threshold in an increasing ``q_grid``.

    Points with too few intervals or bins come back with ``reason`` set
    rather than raising. ``fit_range`` may be a fixed pair or a callable
    of ``s0``; by default ``[3 s0, 0.3]``. Results follow the order of
    ``q_grid`` whatever ``jobs`` is.
    """
    q_grid = [float(q) for q in q_grid]
    if any(b <= a for a, b in zip(q_grid, q_grid[1:])):
        raise ParameterError("q_grid must be strictly increasing")
    x = _values(series)
    if gamma is None:
        gamma = getattr(series, "gamma_target", math.nan)
    fr = default_fit_range if fit_range is None else fit_range
    args = [(x, gamma, q, bins_per_decade, fr, min_intervals) for q in q_grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda a: _sweep_point(*a), args))
    return [_sweep_point(*a) for a in args]


def ks_statistic(samples, cdf) -> float:
    """Two-sided Kolmogorov-Smirnov distance between samples and a CDF callable."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.shape[0]
    F = cdf(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n), 0.0))


def ks_distance(scaled, params: TheoryParams) -> float:
    """KS distance between scaled intervals and the lower-cutoff law."""
    x = np.asarray(scaled, dtype=np.float64)
    if x.shape[0] < MIN_SAMPLES:
        raise EstimationError(f"need at least {MIN_SAMPLES} samples", usable=int(x.shape[0]))
    return ks_statistic(x, lambda r: cutoff_cdf(r, params))


def sup_distance(cdf_a, cdf_b) -> float:
    """Largest gap between two CDFs tabulated on the same grid."""
    return float(np.max(np.abs(np.asarray(cdf_a) - np.asarray(cdf_b))))


def density_table(hist: Histogram, params: TheoryParams) -> dict[str, np.ndarray]:
    """Empirical density next to both theoretical densities at the bin centres."""
    R = hist.centers
    cut = np.full_like(R, np.nan)
    ok = R >= params.s0
    cut[ok] = pdf_cutoff(R[ok], params)
    return {
        "R": R,
        "density_empirical": hist.density,
        "density_theory_eq22": cut,
        "density_theory_eq18": pdf_normalized(R, params.gamma),
    }
