"""Long-range correlated Gaussian noise by Fourier filtering.

White Gaussian Fourier coefficients are shaped by ``f**(-beta/2)`` with
``beta = 1 - gamma`` so that the power spectrum falls off as ``f**(-beta)``
and the autocorrelation as ``tau**(-gamma)``. The zero-frequency weight is
set to zero and the result is standardized to zero mean and unit variance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import EstimationError, ParameterError

MIN_LENGTH = 2**10

Kind = Literal["fourier_filtered", "iid_gaussian"]


@dataclass(frozen=True)
class TimeSeries:
    """A standardized real series plus the parameters that produced it."""

    values: np.ndarray = field(repr=False)
    gamma_target: float
    seed: int
    kind: Kind

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def hurst(self) -> float:
        return 1.0 - self.gamma_target / 2.0

    def metadata(self) -> dict:
        return {"n": self.n, "gamma": self.gamma_target, "seed": self.seed, "kind": self.kind}


@dataclass(frozen=True)
class AcfEstimate:
    """Sample autocorrelation and the power-law exponent fitted to it.

    ``flagged`` is set when every lag in the fit window is inside the
    white-noise band ``4/sqrt(n)``; the exponent is then undefined (nan).
    """

    lags: np.ndarray = field(repr=False)
    acf: np.ndarray = field(repr=False)
    fitted_gamma: float
    fit_range: tuple[int, int]
    stderr: float
    n_usable: int
    flagged: bool = False


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _check_length(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ParameterError(f"n must be an integer, got {n!r}")
    if n < MIN_LENGTH:
        raise ParameterError(f"n must be at least {MIN_LENGTH}, got {n}")
    if not _is_pow2(int(n)):
        raise ParameterError(f"n must be a power of two, got {n}")


def _check_seed(seed: int) -> None:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed!r}")


def standardize(x: np.ndarray) -> np.ndarray:
    """Shift and scale to zero mean and unit (population) variance."""
    x = x - x.mean()
    sd = x.std()
    if not np.isfinite(sd) or sd == 0.0:
        raise ParameterError("cannot standardize a constant series")
    x /= sd
    # a second pass removes the O(eps * n) residue left by the first
    x -= x.mean()
    x /= x.std()
    return x


def spectral_amplitude(n: int, gamma: float) -> np.ndarray:
    """Filter weights ``f**(-(1 - gamma)/2)`` on the ``rfft`` grid, DC zeroed."""
    f = np.fft.rfftfreq(n)
    amp = np.zeros_like(f)
    amp[1:] = f[1:] ** (-(1.0 - gamma) / 2.0)
    return amp


def generate_lrc_gaussian(n: int, gamma: float, seed: int) -> TimeSeries:
    """Long-range correlated Gaussian series with ``C(tau) ~ tau**(-gamma)``.

    Parameters
    ----------
    n : int
        Length; a power of two, at least ``2**10``.
    gamma : float
        Correlation exponent in the open interval (0, 1).
    seed : int
        Seed for a private ``numpy.random.Generator``; output is a pure
        function of ``(n, gamma, seed)``.
    """
    _check_length(n)
    _check_seed(seed)
    if not (0.0 < gamma < 1.0):
        raise ParameterError(f"gamma must lie in (0, 1), got {gamma}")
    rng = np.random.default_rng(seed)
    amp = spectral_amplitude(n, gamma)
    m = amp.shape[0]
    coef = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    coef *= amp
    x = np.fft.irfft(coef, n)
    del coef
    return TimeSeries(standardize(x), float(gamma), int(seed), "fourier_filtered")


def generate_iid_gaussian(n: int, seed: int) -> TimeSeries:
    """Uncorrelated standardized Gaussian baseline (recorded as gamma = 1)."""
    _check_length(n)
    _check_seed(seed)
    rng = np.random.default_rng(seed)
    return TimeSeries(standardize(rng.standard_normal(n)), 1.0, int(seed), "iid_gaussian")


def _values(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def sample_acf(values, max_lag: int) -> np.ndarray:
    """Biased (1/n) sample autocorrelation for lags ``0..max_lag``."""
    x = _values(values)
    x = x - x.mean()
    n = x.shape[0]
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    spec = np.fft.rfft(x, nfft)
    c = np.fft.irfft(spec.real**2 + spec.imag**2, nfft)[: max_lag + 1]
    if c[0] <= 0.0:
        raise EstimationError("series has zero variance", usable=0)
    return c / c[0]


def estimate_autocorrelation(series, max_lag: int = 1000,
                             fit_range: tuple[int, int] = (10, 1000)) -> AcfEstimate:
    """Fit ``log C(tau) = const - gamma * log tau`` over ``fit_range``.

    Only lags with strictly positive sample ACF enter the fit.
    """
    x = _values(series)
    n = x.shape[0]
    lo, hi = int(fit_range[0]), int(fit_range[1])
    if not (1 <= max_lag < n / 4):
        raise ParameterError(f"max_lag must satisfy 1 <= max_lag < n/4, got {max_lag} for n={n}")
    if not (1 <= lo < hi <= max_lag) or hi - lo + 1 < 10:
        raise ParameterError(f"fit_range {fit_range} must lie in [1, {max_lag}] with >= 10 lags")
    acf = sample_acf(x, max_lag)
    lags = np.arange(1, max_lag + 1)
    body = acf[1:]
    window = (lags >= lo) & (lags <= hi)
    usable = window & (body > 0.0)
    k = int(usable.sum())
    if k < 10:
        raise EstimationError("too few positive autocorrelation values in fit range", usable=k)

    if np.max(np.abs(body[window])) < 4.0 / np.sqrt(n):
        return AcfEstimate(lags, body, float("nan"), (lo, hi), float("nan"), k, flagged=True)

    lx = np.log(lags[usable].astype(np.float64))
    ly = np.log(body[usable])
    slope, stderr = _linfit_slope(lx, ly)
    return AcfEstimate(lags, body, -slope, (lo, hi), stderr, k)


def _linfit_slope(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Ordinary least-squares slope and its standard error."""
    xm = x - x.mean()
    sxx = float(xm @ xm)
    slope = float(xm @ (y - y.mean())) / sxx
    resid = y - y.mean() - slope * xm
    dof = x.shape[0] - 2
    stderr = float(np.sqrt((resid @ resid) / dof / sxx)) if dof > 0 else float("nan")
    return slope, stderr


def periodogram_slope(series, decades: float = 1.0) -> tuple[float, float]:
    """Log-log slope of the periodogram over the central frequency band.

    The band spans ``decades`` decades centred (in log frequency) between
    ``1/n`` and the Nyquist frequency. Returns ``(slope, stderr)``.
    """
    x = _values(series)
    n = x.shape[0]
    f = np.fft.rfftfreq(n)[1:]
    power = np.abs(np.fft.rfft(x)[1:]) ** 2
    centre = 0.5 * (np.log10(f[0]) + np.log10(f[-1]))
    band = (np.log10(f) >= centre - decades / 2) & (np.log10(f) <= centre + decades / 2)
    return _linfit_slope(np.log(f[band]), np.log(power[band]))
