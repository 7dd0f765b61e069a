"""Flux models: Courant numbers, exact interval extrema, wave-speed bounds."""

import numpy as np
import pytest

from ltsfv import (AdvectionModel, BurgersModel, local_courant, max_wavespeed,
                   osher_extremum)


def scan_extremum(model, s, lo, hi, mode, nsamples=100001):
    """Brute-force oracle: dense scan of f(u) - s*u over [lo, hi]."""
    u = np.linspace(lo, hi, nsamples)
    w = model.eval(u) - s * u
    return float(w.min()) if mode == "min" else float(w.max())


def test_local_courant_burgers_secant():
    # (f(2) - f(1)) / (2 - 1) = (2 - 0.5) / 1
    assert local_courant(BurgersModel(), 1.0, 2.0, 1.0) == pytest.approx(1.5, abs=0)


def test_local_courant_advection_constant():
    model = AdvectionModel(1.0)
    assert local_courant(model, 0.3, 2.0, 0.7) == pytest.approx(0.7, rel=1e-15)
    assert local_courant(model, -5.0, 11.0, 0.7) == pytest.approx(0.7, rel=1e-15)


def test_local_courant_degenerate_uses_derivative():
    assert local_courant(BurgersModel(), 3.0, 3.0, 1.0) == 3.0


def test_local_courant_rejects_bad_input():
    with pytest.raises(ValueError):
        local_courant(BurgersModel(), np.nan, 1.0, 1.0)
    with pytest.raises(ValueError):
        local_courant(BurgersModel(), 0.0, 1.0, -1.0)
    with pytest.raises(ValueError):
        local_courant(BurgersModel(), 0.0, np.inf, 1.0)


def test_local_courant_continuous_at_degeneracy():
    model = BurgersModel()
    eps = 1e-8
    for u in (-2.0, -0.3, 0.0, 0.7, 1.9):
        secant = local_courant(model, u, u + eps, 1.0)
        assert abs(secant - 1.0 * model.deriv(u)) < 1e-6


def test_local_courant_sign_symmetry():
    model = BurgersModel()
    rng = np.random.default_rng(7)
    for _ in range(100):
        ul, ur = rng.uniform(-3, 3, 2)
        assert local_courant(model, -ul, -ur, 0.8) == -local_courant(model, ul, ur, 0.8)


def test_osher_extremum_burgers_interior_minimum():
    # interior critical point u* = 0.5 gives 0.125 - 0.25
    assert osher_extremum(BurgersModel(), 0.5, (0.0, 1.0), "min") == -0.125


def test_osher_extremum_burgers_symmetric_interval():
    # min of u^2/2 at u=0; endpoints give 0.5
    assert osher_extremum(BurgersModel(), 0.0, (-1.0, 1.0), "min") == 0.0


def test_osher_extremum_degenerate_interval():
    for model in (BurgersModel(), AdvectionModel(-2.0)):
        for a, s in ((0.7, 1.3), (-2.0, 0.0)):
            expected = model.eval(a) - s * a
            assert osher_extremum(model, s, (a, a), "min") == expected
            assert osher_extremum(model, s, (a, a), "max") == expected


def test_osher_extremum_rejects_bad_interval():
    with pytest.raises(ValueError):
        osher_extremum(BurgersModel(), 0.0, (1.0, 0.0), "min")
    with pytest.raises(ValueError):
        osher_extremum(BurgersModel(), 0.0, (0.0, 1.0), "median")
    with pytest.raises(ValueError):
        osher_extremum(BurgersModel(), np.inf, (0.0, 1.0), "min")


@pytest.mark.parametrize("model", [BurgersModel(), AdvectionModel(1.7)])
def test_osher_extremum_matches_brute_force(model):
    rng = np.random.default_rng(42)
    for _ in range(50):
        lo, hi = np.sort(rng.uniform(-4, 4, 2))
        s = float(rng.uniform(-5, 5))
        # scan resolution: step * local slope bound, plus curvature of the step
        h = (hi - lo) / 100000
        slope = abs(model.deriv(lo) - s) + abs(model.deriv(hi) - s)
        tol = slope * h + h * h
        for mode in ("min", "max"):
            exact = osher_extremum(model, s, (lo, hi), mode)
            scanned = scan_extremum(model, s, lo, hi, mode)
            assert abs(exact - scanned) <= tol
            # the scan can never beat an exact extremum
            if mode == "min":
                assert exact <= scanned + 1e-12
            else:
                assert exact >= scanned - 1e-12


def test_osher_extremum_bounds_sampled_values():
    model = BurgersModel()
    rng = np.random.default_rng(3)
    lo, hi, s = -1.5, 2.5, 0.8
    wmin = osher_extremum(model, s, (lo, hi), "min")
    wmax = osher_extremum(model, s, (lo, hi), "max")
    u = rng.uniform(lo, hi, 1000)
    w = model.eval(u) - s * u
    assert np.all(w >= wmin - 1e-12)
    assert np.all(w <= wmax + 1e-12)


def test_max_wavespeed_burgers():
    assert max_wavespeed(BurgersModel(), [-1.0, 0.0, 1.0]) == 1.0
    # square pulse values
    assert max_wavespeed(BurgersModel(), [0.0, 1.0]) == 1.0
    assert max_wavespeed(BurgersModel(), [0.5]) == 0.5


def test_max_wavespeed_advection():
    assert max_wavespeed(AdvectionModel(-2.0), [5.0, -17.0, 0.1]) == 2.0


def test_max_wavespeed_dominates_sampled_derivatives():
    model = BurgersModel()
    rng = np.random.default_rng(5)
    states = rng.uniform(-3, 3, 20)
    bound = max_wavespeed(model, states)
    for a, b in zip(states[:-1], states[1:]):
        u = rng.uniform(min(a, b), max(a, b), 200)
        assert np.all(np.abs(model.deriv(u)) <= bound + 1e-12)


def test_max_wavespeed_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        max_wavespeed(BurgersModel(), [])
    with pytest.raises(ValueError):
        max_wavespeed(BurgersModel(), [0.0, np.nan])
