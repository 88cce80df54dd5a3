"""Threshold exceedances and the return intervals between them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientEventsError, ParameterError
from .generator import TimeSeries


@dataclass(frozen=True)
class EventSeries:
    """Sorted positions ``t`` with ``x(t) >= q`` in a series of given length."""

    length: int
    q: float
    event_indices: np.ndarray = field(repr=False)
    gamma_target: float = float("nan")
    meta: dict = field(default_factory=dict)

    @property
    def n_events(self) -> int:
        return int(self.event_indices.shape[0])


@dataclass(frozen=True)
class IntervalSeries:
    intervals: np.ndarray = field(repr=False)
    mean_r: float
    q: float
    gamma_target: float
    first_event: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def n_intervals(self) -> int:
        return int(self.intervals.shape[0])

    @property
    def s0(self) -> float:
        """Smallest possible scaled interval, ``1/<r>``."""
        return 1.0 / self.mean_r

    def scaled(self) -> np.ndarray:
        return scale_intervals(self)

    def summary(self) -> dict:
        out = {
            "q": self.q,
            "n_events": self.n_intervals + 1,
            "n_intervals": self.n_intervals,
            "mean_r": self.mean_r,
            "gamma_target": self.gamma_target,
        }
        out.update(self.meta)
        return out


def binarize(series, q: float) -> EventSeries:
    """Indices of all samples meeting or exceeding the threshold ``q``.

    An empty result is a valid EventSeries; :func:`return_intervals`
    rejects it.
    """
    if isinstance(series, TimeSeries):
        x, gamma = series.values, series.gamma_target
    else:
        x, gamma = np.asarray(series, dtype=np.float64), float("nan")
    if x.ndim != 1 or x.shape[0] == 0:
        raise ParameterError("series must be a nonempty 1-d sequence")
    if not np.isfinite(q):
        raise ParameterError(f"threshold must be finite, got {q}")
    idx = np.flatnonzero(x >= q).astype(np.int64)
    return EventSeries(int(x.shape[0]), float(q), idx, gamma)


def return_intervals(events: EventSeries) -> IntervalSeries:
    """Differences of successive event positions (start to start)."""
    idx = events.event_indices
    if idx.shape[0] < 2:
        raise InsufficientEventsError(int(idx.shape[0]))
    r = np.diff(idx)
    return IntervalSeries(
        intervals=r,
        mean_r=float(r.mean()),
        q=events.q,
        gamma_target=events.gamma_target,
        first_event=int(idx[0]),
        meta=dict(events.meta),
    )


def scale_intervals(intervals: IntervalSeries) -> np.ndarray:
    """``R = r / <r>``; the result has unit mean up to round-off."""
    if not intervals.mean_r > 0:
        raise ParameterError(f"mean interval must be positive, got {intervals.mean_r}")
    return intervals.intervals / intervals.mean_r


def reconstruct_events(intervals: IntervalSeries) -> np.ndarray:
    """Invert :func:`return_intervals` given the first event position."""
    head = np.array([intervals.first_event], dtype=np.int64)
    return np.concatenate([head, intervals.first_event + np.cumsum(intervals.intervals)])
