"""Return-interval statistics of extreme events in long-range correlated series.

The package generates long-range correlated Gaussian noise by Fourier
filtering, extracts threshold exceedances and the intervals between them,
and compares the interval distribution with the power-law times
stretched-exponential law (and its lower-cutoff variant, whose constants
come from a transcendental equation in the upper incomplete gamma function).
A direct simulation of the underlying hazard process is included as a
control with independent intervals.
"""
from ._backend import BACKEND
from .errors import (
    DomainError,
    EstimationError,
    InsufficientEventsError,
    ParameterError,
    RetintError,
    SolverError,
)
from .estimator import (
    Histogram,
    SlopeEstimate,
    cutoff_cdf,
    fit_powerlaw_slope,
    ks_distance,
    log_binned_histogram,
    sweep_threshold,
)
from .extremes import (
    EventSeries,
    IntervalSeries,
    binarize,
    return_intervals,
    scale_intervals,
)
from .generator import (
    AcfEstimate,
    TimeSeries,
    estimate_autocorrelation,
    generate_iid_gaussian,
    generate_lrc_gaussian,
)
from .procsim import ProcessConfig, hazard_pk, simulate_process
from .special import upper_incomplete_gamma
from .theory import (
    GammaConstant,
    TheoryParams,
    asymptote_large_R,
    asymptote_small_R,
    g_gamma,
    harmonic_limit_check,
    pdf_cutoff,
    pdf_normalized,
    pdf_stretched,
    pdf_uncorrelated,
    solve_constants,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AcfEstimate",
    "DomainError",
    "EstimationError",
    "EventSeries",
    "GammaConstant",
    "Histogram",
    "InsufficientEventsError",
    "IntervalSeries",
    "ParameterError",
    "ProcessConfig",
    "RetintError",
    "SlopeEstimate",
    "SolverError",
    "TheoryParams",
    "TimeSeries",
    "asymptote_large_R",
    "asymptote_small_R",
    "binarize",
    "cutoff_cdf",
    "estimate_autocorrelation",
    "fit_powerlaw_slope",
    "g_gamma",
    "generate_iid_gaussian",
    "generate_lrc_gaussian",
    "harmonic_limit_check",
    "hazard_pk",
    "ks_distance",
    "log_binned_histogram",
    "pdf_cutoff",
    "pdf_normalized",
    "pdf_stretched",
    "pdf_uncorrelated",
    "return_intervals",
    "scale_intervals",
    "simulate_process",
    "solve_constants",
    "sweep_threshold",
    "upper_incomplete_gamma",
]
