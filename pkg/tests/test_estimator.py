import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retint import (
    EstimationError,
    Histogram,
    ParameterError,
    SlopeEstimate,
    binarize,
    fit_powerlaw_slope,
    generate_iid_gaussian,
    generate_lrc_gaussian,
    ks_distance,
    log_binned_histogram,
    return_intervals,
    solve_constants,
    sweep_threshold,
)
from retint.estimator import density_table, ks_statistic, sup_distance
from retint.theory import sample_cutoff


@settings(max_examples=80, deadline=None)
@given(n=st.integers(100, 3000), seed=st.integers(0, 2**32 - 1),
       bpd=st.integers(4, 20), shape=st.floats(0.2, 3.0))
def test_mass_conservation(n, seed, bpd, shape):
    x = np.random.default_rng(seed).weibull(shape, n) + 1e-3
    h = log_binned_histogram(x, bpd)
    assert abs(h.mass() - 1.0) < 1e-9
    assert h.counts.sum() == h.n_total == n
    assert h.edges[0] == pytest.approx(x.min()) and np.all(np.diff(h.edges) > 0)
    assert h.counts[-1] > 0


@settings(max_examples=40, deadline=None)
@given(r=st.lists(st.integers(1, 5000), min_size=100, max_size=1500))
def test_lattice_mass_conservation(r):
    r = np.array(r, dtype=float)
    m = r.mean()
    h = log_binned_histogram(r / m, 10, m)
    assert h.lattice == (True if r.min() >= 1 else False) or h.lattice
    assert abs(h.mass() - 1.0) < 1e-9
    assert h.counts.sum() == r.shape[0]


def test_all_equal_single_bin():
    h = log_binned_histogram(np.full(200, 0.5), 10)
    assert h.counts.tolist() == [200]
    assert h.mass() == pytest.approx(1.0, abs=1e-12)


def test_too_few_samples():
    with pytest.raises(EstimationError):
        log_binned_histogram(np.ones(99))


def test_bad_bins_per_decade():
    with pytest.raises(ParameterError):
        log_binned_histogram(np.ones(200), 3)
    with pytest.raises(ParameterError):
        log_binned_histogram(np.ones(200), 21)


def test_samples_below_support():
    with pytest.raises(ParameterError):
        log_binned_histogram(np.linspace(0.01, 2, 200), 10, mean_r=10.0)


def test_exponential_within_poisson_bands():
    x = np.random.default_rng(5).standard_exponential(10**5)
    h = log_binned_histogram(x, 10)
    F = lambda r: 1 - np.exp(-r)
    expected = h.n_total * (F(h.edges[1:]) - F(h.edges[:-1]))
    sel = expected > 5
    assert sel.sum() > 30
    z = (h.counts[sel] - expected[sel]) / np.sqrt(expected[sel])
    assert np.all(np.abs(z) < 3.5)
    assert np.mean(np.abs(z) < 3) > 0.98


def test_exact_power_law_slope():
    edges = 1e-3 * 10 ** (np.arange(41) / 10)
    c = np.sqrt(edges[:-1] * edges[1:])
    dens = 3.7 * c**-0.9
    h = Histogram(edges, dens, np.ones(40, dtype=int), 40)
    est = fit_powerlaw_slope(h, (3e-3, 0.5), gamma=0.1)
    assert est.s_m == pytest.approx(-0.9, abs=1e-6)
    assert est.theta == pytest.approx(1.0, abs=1e-6)
    assert est.n_bins >= 5


def test_fit_range_validation():
    x = np.random.default_rng(2).standard_exponential(5000) + 1e-3
    h = log_binned_histogram(x, 10)
    with pytest.raises(ParameterError):
        fit_powerlaw_slope(h, (0.01, 1.5))
    with pytest.raises(EstimationError) as info:
        fit_powerlaw_slope(h, (0.2, 0.25))
    assert info.value.usable < 5


def test_theta_is_derived():
    est = SlopeEstimate(-0.4, 0.01, (0.01, 0.3), q=3.0, gamma=0.5)
    assert est.theta == -0.4 / (0.5 - 1.0)
    assert "theta" not in est.__dataclass_fields__


def test_iid_pipeline_is_flat():
    iv = return_intervals(binarize(generate_iid_gaussian(2**22, 11), 2.0))
    h = log_binned_histogram(iv.scaled(), 10, iv.mean_r)
    est = fit_powerlaw_slope(h, (0.05, 0.5), gamma=1.0)
    # no power-law divergence: the only curvature comes from exp(-R) itself
    c = h.centers
    sel = (c >= 0.05) & (c <= 0.5)
    exact = np.polyfit(np.log(c[sel]), -c[sel], 1)[0]
    assert est.s_m == pytest.approx(exact, abs=0.05)
    assert abs(est.s_m) < 0.25


def test_lattice_centres_shifted():
    r = np.array([1, 2, 3, 5, 8] * 40, dtype=float)
    h = log_binned_histogram(r / r.mean(), 10, r.mean())
    assert h.lattice
    assert np.all(h.centers > 0)


def test_density_table_columns():
    p = solve_constants(0.5, 100.0)
    x = sample_cutoff(p, 5000, np.random.default_rng(0))
    h = log_binned_histogram(x, 10, 100.0)
    t = density_table(h, p)
    assert list(t) == ["R", "density_empirical", "density_theory_eq22", "density_theory_eq18"]
    assert all(len(v) == len(h.density) for v in t.values())


@pytest.fixture(scope="module")
def short_lrc():
    return generate_lrc_gaussian(2**20, 0.3, 3)


def test_sweep_missing_and_order(short_lrc):
    q = [1.0, 2.0, 3.0, 10.0]
    a = sweep_threshold(short_lrc, q)
    b = sweep_threshold(short_lrc, q, jobs=4)
    assert [e.q for e in a] == q
    assert not a[-1].ok and "events" in a[-1].reason
    for x, y in zip(a, b):
        assert (x.s_m == y.s_m) or (math.isnan(x.s_m) and math.isnan(y.s_m))
    means = [e.mean_r for e in a[:-1]]
    assert means == sorted(means)


def test_sweep_requires_increasing_grid(short_lrc):
    with pytest.raises(ParameterError):
        sweep_threshold(short_lrc, [2.0, 1.0])


def test_sweep_callable_fit_range(short_lrc):
    (e,) = sweep_threshold(short_lrc, [2.0], fit_range=lambda s0: (2 * s0, 0.5))
    assert e.ok and e.fit_range[1] == 0.5


def test_ks_self_sampling():
    p = solve_constants(0.5, 743.0)
    x = sample_cutoff(p, 10**5, np.random.default_rng(9))
    assert ks_distance(x, p) < 0.01


def test_ks_mismatch():
    p = solve_constants(0.3, 743.0)
    x = np.random.default_rng(1).standard_exponential(10**4) + p.s0
    assert ks_distance(x, p) > 0.1


def test_ks_few_samples():
    with pytest.raises(EstimationError):
        ks_distance(np.ones(50), solve_constants(0.5, 10.0))


def test_ks_statistic_by_hand():
    # uniform grid points against the uniform CDF
    x = (np.arange(10) + 0.5) / 10
    assert ks_statistic(x, lambda t: t) == pytest.approx(0.05)


def test_sup_distance_identical():
    g = np.linspace(0, 1, 33)
    assert sup_distance(g, g) == 0.0
