"""Direct simulation of the power-law hazard process.

After each event the step counter restarts at ``k = 1``; at every step a
uniform variate ``xi_k`` is drawn and an event is registered when
``xi_k < P(k)`` with ``P(k) = a * k**(-(1-gamma))`` and
``a = gamma / (k_max**gamma - 1)``. Intervals between events are therefore
independent by construction.

Two samplers give the same interval distribution:

``stepwise``
    one uniform per step, exactly as described above. Cost grows with the
    total simulated time, which is of order ``k_max`` per event.
``thinning``
    jumps straight to the next candidate step with a geometric draw at the
    current (largest remaining) hazard and accepts it with probability
    ``P(j)/P(k)``. Cost is a few draws per event.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np

from ._backend import kernels
from .errors import DomainError, ParameterError
from .extremes import EventSeries

_BLOCK = 1 << 16


@dataclass(frozen=True)
class ProcessConfig:
    """Parameters of one process run.

    ``k_max`` is the normalization horizon of the hazard. ``horizon`` is
    where an event is forced if none has been accepted; ``None`` means no
    forcing. ``exponent="gamma"`` selects the alternative hazard
    ``k**(-gamma)`` for comparison runs.
    """

    gamma: float
    k_max: int = 100_000
    n_events_target: int = 100_000
    seed: int = 0
    horizon: int | None = None
    exponent: Literal["one_minus_gamma", "gamma"] = "one_minus_gamma"
    method: Literal["thinning", "stepwise"] = "thinning"

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ParameterError(f"gamma must lie in (0, 1), got {self.gamma}")
        if self.k_max < 2:
            raise ParameterError(f"k_max must be at least 2, got {self.k_max}")
        if self.n_events_target < 1000:
            raise ParameterError(f"n_events_target must be at least 1000, got {self.n_events_target}")
        if self.seed < 0:
            raise ParameterError(f"seed must be non-negative, got {self.seed}")
        if self.horizon is not None and self.horizon < 1:
            raise ParameterError(f"horizon must be positive, got {self.horizon}")
        if self.exponent not in ("one_minus_gamma", "gamma"):
            raise ParameterError(f"unknown exponent {self.exponent!r}")
        if self.method not in ("thinning", "stepwise"):
            raise ParameterError(f"unknown method {self.method!r}")

    @property
    def a(self) -> float:
        """Normalization constant so the hazard integrates to 1 on [1, k_max]."""
        return self.gamma / (self.k_max**self.gamma - 1.0)

    @property
    def power(self) -> float:
        return 1.0 - self.gamma if self.exponent == "one_minus_gamma" else self.gamma

    @property
    def clipped(self) -> bool:
        """True when ``P(1) = a`` exceeds one and the hazard is clipped."""
        return self.a > 1.0

    def to_dict(self) -> dict:
        return asdict(self)


def hazard_pk(k, config: ProcessConfig):
    """Acceptance probability at step ``k`` (1 <= k <= k_max), clipped to [0, 1]."""
    k = np.asarray(k)
    if np.any(k < 1) or np.any(k > config.k_max):
        raise DomainError(f"k must lie in [1, {config.k_max}]")
    p = config.a * k.astype(np.float64) ** (-config.power)
    return np.minimum(p, 1.0)


def simulate_intervals(config: ProcessConfig, backend=None) -> tuple[np.ndarray, int]:
    """Run the process; return ``(intervals, n_forced)``.

    ``backend`` overrides the kernel module (used to compare the compiled
    and pure-Python paths).
    """
    kern = kernels if backend is None else backend
    step = kern.thinning_events if config.method == "thinning" else kern.stepwise_events
    rng = np.random.default_rng(config.seed)
    # the run starts from an event at t = 0, so N events need N - 1 intervals
    out = np.empty(config.n_events_target - 1, dtype=np.int64)
    horizon = 0 if config.horizon is None else int(config.horizon)
    k, n_out, forced = 1, 0, 0
    left = np.empty(0)
    while n_out < out.shape[0]:
        u = np.concatenate([left, rng.random(_BLOCK)]) if left.size else rng.random(_BLOCK)
        used, k, n_out, forced = step(u, k, config.a, config.power, horizon,
                                      out, n_out, forced)
        left = u[used:]
    return out, int(forced)


def simulate_process(config: ProcessConfig) -> EventSeries:
    """Event times of one run, starting with an event at ``t = 0``.

    ``meta`` records the configuration, whether the hazard was clipped and
    how many events were forced at the horizon.
    """
    r, forced = simulate_intervals(config)
    times = np.concatenate([[0], np.cumsum(r)])
    meta = {
        "kind": "process_sim",
        "config": config.to_dict(),
        "a": config.a,
        "clipped": config.clipped,
        "n_forced": forced,
    }
    return EventSeries(int(times[-1]) + 1, math.nan, times, float(config.gamma), meta)
