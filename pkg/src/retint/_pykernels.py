"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Each function consumes its uniform variates in exactly the same order as
the compiled one, so the two backends agree event for event.
"""
from __future__ import annotations

import math

import numpy as np

_MAX_STEP = 4.0e18
_CHUNK = 1 << 20


def harmonic_sum(n_terms: int, order: float) -> float:
    """Correctly rounded sum of k**(-order) for k = 1..n_terms."""
    parts = []
    for start in range(1, n_terms + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, n_terms + 1), dtype=np.float64)
        parts.append(math.fsum(k ** (-order)))
    return math.fsum(parts)


def _hazard(a: float, expo: float, k: float) -> float:
    p = a * math.pow(k, -expo)
    return 1.0 if p > 1.0 else p


def stepwise_events(u, k, a, expo, horizon, out, n_out, forced):
    nu = u.shape[0]
    cap = out.shape[0]
    i = 0
    while i < nu and n_out < cap:
        # hazard for steps k, k+1, ... against the remaining uniforms
        span = nu - i
        if horizon > 0:
            span = min(span, horizon - k + 1)
        steps = k + np.arange(span, dtype=np.float64)
        p = np.minimum(a * steps ** (-expo), 1.0)
        hit = np.flatnonzero(u[i:i + span] < p)
        if hit.size:
            d = int(hit[0])
            out[n_out] = k + d
            n_out += 1
            k = 1
            i += d + 1
        elif horizon > 0 and k + span - 1 >= horizon:
            out[n_out] = horizon
            n_out += 1
            forced += 1
            k = 1
            i += span
        else:
            k += span
            i += span
    return i, k, n_out, forced


def thinning_events(u, k, a, expo, horizon, out, n_out, forced):
    nu = u.shape[0]
    cap = out.shape[0]
    i = 0
    while i + 1 < nu and n_out < cap:
        pb = _hazard(a, expo, float(k))
        if pb >= 1.0:
            g = 0.0
        else:
            g = math.floor(math.log(1.0 - u[i]) / math.log1p(-pb))
            g = min(g, _MAX_STEP)
        j = k + int(g)
        accept = u[i + 1] * pb < _hazard(a, expo, float(j))
        i += 2
        if horizon > 0 and j >= horizon:
            out[n_out] = horizon
            n_out += 1
            if j > horizon or not accept:
                forced += 1
            k = 1
        elif accept:
            out[n_out] = j
            n_out += 1
            k = 1
        else:
            k = j + 1
    return i, k, n_out, forced
