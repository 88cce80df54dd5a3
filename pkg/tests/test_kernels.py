import math

import numpy as np
import pytest

from retint import _backend, _pykernels
from retint.procsim import ProcessConfig, simulate_intervals

try:
    from retint import _kernels
except ImportError:  # pragma: no cover - extension not built
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert _backend.BACKEND in ("cython", "python")


@pytest.mark.parametrize("order", [0.1, 0.5, 0.7, 1.0, -0.3])
def test_python_harmonic_matches_fsum(order):
    n = 5000
    exact = math.fsum(k ** (-order) for k in range(1, n + 1))
    assert _pykernels.harmonic_sum(n, order) == exact


@needs_ext
@pytest.mark.parametrize("order", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("n", [0, 1, 10, 999_999])
def test_compiled_harmonic_matches_python(order, n):
    a = _kernels.harmonic_sum(n, order)
    b = _pykernels.harmonic_sum(n, order)
    assert a == pytest.approx(b, rel=1e-15, abs=0.0)


@needs_ext
@pytest.mark.parametrize("method", ["thinning", "stepwise"])
@pytest.mark.parametrize("gamma,k_max,horizon", [(0.5, 1000, None), (0.3, 50, None),
                                                 (0.7, 200, 150), (0.5, 2, None)])
def test_backends_produce_identical_events(method, gamma, k_max, horizon):
    cfg = ProcessConfig(gamma, k_max, 3000, seed=11, horizon=horizon, method=method)
    a, fa = simulate_intervals(cfg, backend=_kernels)
    b, fb = simulate_intervals(cfg, backend=_pykernels)
    np.testing.assert_array_equal(a, b)
    assert fa == fb


def test_thinning_kernel_respects_capacity():
    out = np.zeros(5, dtype=np.int64)
    u = np.random.default_rng(0).random(10_000)
    used, k, n_out, forced = _pykernels.thinning_events(u, 1, 0.9, 0.5, 0, out, 0, 0)
    assert n_out == 5 and used <= u.shape[0] and k == 1 and forced == 0


def test_stepwise_kernel_resumes_across_buffers():
    # splitting the uniform stream must not change the outcome
    u = np.random.default_rng(1).random(200_000)
    whole = np.zeros(200, dtype=np.int64)
    _pykernels.stepwise_events(u, 1, 0.05, 0.5, 0, whole, 0, 0)
    parts = np.zeros(200, dtype=np.int64)
    used, k, n, f = _pykernels.stepwise_events(u[:17_001], 1, 0.05, 0.5, 0, parts, 0, 0)
    _pykernels.stepwise_events(u[used:], k, 0.05, 0.5, 0, parts, n, f)
    np.testing.assert_array_equal(whole, parts)
