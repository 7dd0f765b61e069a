"""Time loop, boundaries, timestep selection, diagnostics, reproducibility."""

import math

import numpy as np
import pytest

from ltsfv import (AdvectionModel, BoundaryCondition, BurgersModel, GasModel,
                   Grid1D, SchemeSpec, XorShift64Star, build_case,
                   primitives_to_field, run, select_timestep, step,
                   total_variation)
from ltsfv.driver import _max_speed


def test_grid_geometry():
    grid = Grid1D(0.0, 1.0, 800)
    assert grid.dx == pytest.approx(1.0 / 800, abs=0)
    x = grid.centers()
    assert x[0] == pytest.approx(grid.dx / 2) and x.size == 800
    with pytest.raises(ValueError):
        Grid1D(1.0, 0.0, 10)
    with pytest.raises(ValueError):
        Grid1D(0.0, 1.0, 0)


def test_boundary_extension():
    u = np.array([1.0, 2.0, 3.0])
    zg = BoundaryCondition("zero-gradient").extend(u, 2)
    np.testing.assert_array_equal(zg, [1, 1, 1, 2, 3, 3, 3])
    pe = BoundaryCondition("periodic").extend(u, 2)
    np.testing.assert_array_equal(pe, [2, 3, 1, 2, 3, 1, 2])
    with pytest.raises(ValueError):
        BoundaryCondition("reflecting")
    field = np.arange(6.0).reshape(3, 2)
    ext = BoundaryCondition("zero-gradient").extend(field, 1)
    assert ext.shape == (5, 2)
    np.testing.assert_array_equal(ext[0], field[0])


def test_total_variation_examples():
    assert total_variation([0.0, 1.0, 1.0, 0.0]) == 2.0
    assert total_variation([0.0, 0.5, 1.0]) == 1.0
    assert total_variation(np.full(5, 3.7)) == 0.0
    per_comp = total_variation(np.array([[0.0, 1.0], [1.0, 1.0], [0.0, 3.0]]))
    np.testing.assert_array_equal(per_comp, [2.0, 2.0])
    with pytest.raises(ValueError):
        total_variation([1.0])


def test_rng_stream_is_deterministic_and_centered():
    a = XorShift64Star(123)
    b = XorShift64Star(123)
    draws_a = [a.symmetric() for _ in range(1000)]
    draws_b = [b.symmetric() for _ in range(1000)]
    assert draws_a == draws_b
    assert XorShift64Star(124).symmetric() != draws_a[0]
    arr = np.array(draws_a)
    assert np.all(arr >= -0.5) and np.all(arr < 0.5)
    assert abs(arr.mean()) < 0.05


def test_select_timestep_deterministic():
    dt, eff, k = select_timestep(SchemeSpec("roe"), 5.0, 1.0, 1.0 / 800, 1e9)
    assert dt == pytest.approx(5.0 / 800, abs=0)
    assert eff == 5.0 and k == 5


def test_select_timestep_random_draws_centered():
    spec = SchemeSpec("roestar", seed=3)
    rng = XorShift64Star(spec.seed)
    effs = []
    for _ in range(10000):
        _, eff, k = select_timestep(spec, 5.0, 1.0, 0.01, 1e9, rng)
        effs.append(eff)
        assert k == math.ceil(eff - 1e-9)
    effs = np.array(effs)
    assert np.all(effs >= 4.5) and np.all(effs <= 5.5)
    assert abs(effs.mean() - 5.0) < 0.02


def test_select_timestep_clamps_to_remaining_time():
    dx = 0.01
    t_rem = dx / 1.0  # exactly one unit-Courant step
    dt, eff, k = select_timestep(SchemeSpec("roe"), 5.0, 1.0, dx, t_rem)
    assert dt == t_rem
    assert eff == pytest.approx(1.0, rel=1e-12)
    assert k == 1


def test_select_timestep_rejections():
    with pytest.raises(ValueError):
        select_timestep(SchemeSpec("roe"), 5.0, 0.0, 0.01, 1.0)
    with pytest.raises(ValueError):
        select_timestep(SchemeSpec("roe"), -1.0, 1.0, 0.01, 1.0)
    with pytest.raises(ValueError):
        select_timestep(SchemeSpec("roe"), 5.0, 1.0, 0.01, 0.0)
    with pytest.raises(ValueError):
        select_timestep(SchemeSpec("roestar", seed=1), 0.4, 1.0, 0.01,
                        1.0, XorShift64Star(1))


def test_step_translates_exactly_at_integer_courant():
    n = 128
    grid = Grid1D(0.0, 1.0, n)
    bc = BoundaryCondition("periodic")
    u0 = np.where((np.arange(n) > 30) & (np.arange(n) < 60), 1.0, 0.0)
    dt = 2.0 * grid.dx  # C = 2 exactly for a = 1
    u = u0.copy()
    for _ in range(3):
        u = step(u, SchemeSpec("roe"), AdvectionModel(1.0), dt, grid, bc)
    np.testing.assert_array_equal(u, np.roll(u0, 6))


@pytest.mark.parametrize("kind,kwargs", [
    ("roe", {}), ("lxf", {}), ("roelxf", {"beta": 0.2}),
    ("roestar", {}), ("godunov", {}),
])
def test_step_keeps_constant_field(kind, kwargs):
    grid = Grid1D(0.0, 1.0, 50)
    bc = BoundaryCondition("zero-gradient")
    u0 = np.full(50, 0.8)
    u = step(u0, SchemeSpec(kind, **kwargs), BurgersModel(), 2.0 * grid.dx, grid, bc)
    np.testing.assert_allclose(u, u0, atol=1e-15)


def test_step_single_roe_step_is_tvd():
    case = build_case("burgers-square")
    grid = Grid1D(0.0, 1.0, 800)
    bc = BoundaryCondition("zero-gradient")
    u0 = case.initial(grid.centers())
    dt = 5.0 * grid.dx
    u = step(u0, SchemeSpec("roe"), case.model, dt, grid, bc)
    assert total_variation(u) <= total_variation(u0) + 1e-10


def test_step_rejects_cfl_violation_without_mutation():
    grid = Grid1D(0.0, 1.0, 50)
    bc = BoundaryCondition("zero-gradient")
    u0 = np.linspace(-1.0, 1.0, 50)
    with pytest.raises(ValueError, match="CFL"):
        step(u0, SchemeSpec("roe"), BurgersModel(), 10.0 * grid.dx, grid, bc, k=2)


def test_step_rejects_too_small_grid():
    grid = Grid1D(0.0, 1.0, 5)
    bc = BoundaryCondition("zero-gradient")
    with pytest.raises(ValueError, match="stencil"):
        step(np.zeros(5) + 0.1, SchemeSpec("roe"), BurgersModel(),
             20.0 * grid.dx, grid, bc, k=3)


def test_lxf_step_equals_closed_form_scalar():
    # U_new = (U_{j-k} + U_{j+k})/2 - ratio/(2k) (f_{j+k} - f_{j-k})
    rng = np.random.default_rng(61)
    n, k = 40, 3
    grid = Grid1D(0.0, 1.0, n)
    bc = BoundaryCondition("periodic")
    u0 = rng.normal(size=n)
    dt = 2.5 * grid.dx / np.abs(u0).max()
    ratio = dt / grid.dx
    u = step(u0, SchemeSpec("lxf"), BurgersModel(), dt, grid, bc, k=k)
    ext = bc.extend(u0, k)
    f = 0.5 * ext * ext
    closed = 0.5 * (ext[:n] + ext[2 * k:]) - ratio / (2 * k) * (f[2 * k:] - f[:n])
    np.testing.assert_allclose(u, closed, rtol=1e-12, atol=1e-13)


def test_lxf_step_equals_closed_form_euler():
    rng = np.random.default_rng(62)
    n, k = 40, 3
    grid = Grid1D(0.0, 1.0, n)
    bc = BoundaryCondition("periodic")
    gas = GasModel(1.4)
    rho = rng.uniform(0.5, 2.0, n)
    vel = rng.uniform(-0.4, 0.4, n)
    p = rng.uniform(0.5, 2.0, n)
    w0 = primitives_to_field(rho, vel, p, gas)
    dt = 2.5 * grid.dx / _max_speed(gas, w0, bc)
    ratio = dt / grid.dx
    w = step(w0, SchemeSpec("lxf"), gas, dt, grid, bc, k=k)
    ext = bc.extend(w0, k)
    from ltsfv import field_to_primitives
    r_, u_, p_ = field_to_primitives(ext, gas)
    flux = np.stack([ext[:, 1], ext[:, 1] * u_ + p_, (ext[:, 2] + p_) * u_], axis=-1)
    closed = 0.5 * (ext[:n] + ext[2 * k:]) - ratio / (2 * k) * (flux[2 * k:] - flux[:n])
    np.testing.assert_allclose(w, closed, rtol=1e-12, atol=1e-13)


@pytest.mark.parametrize("kind,kwargs", [
    ("roe", {}), ("lxf", {}), ("roelxf", {"beta": 0.2}),
    ("roestar", {}), ("godunov", {}),
])
def test_periodic_mass_conservation(kind, kwargs):
    grid = Grid1D(0.0, 1.0, 100)
    bc = BoundaryCondition("periodic")
    x = grid.centers()
    u0 = np.where((x > 0.3) & (x < 0.7), 1.0, 0.0) + 0.1 * np.sin(2 * np.pi * x)
    model = BurgersModel()
    spec = SchemeSpec(kind, **kwargs)
    u = u0.copy()
    for _ in range(30):
        dt = 2.5 * grid.dx / _max_speed(model, u, bc)
        u = step(u, spec, model, dt, grid, bc)
    assert abs(u.sum() - u0.sum()) <= 1e-12 * max(1.0, abs(u0.sum()))


def test_run_lands_exactly_on_t_end_and_logs_every_step():
    case = build_case("burgers-square")
    grid = Grid1D(0.0, 1.0, 200)
    bc = BoundaryCondition("zero-gradient")
    u0 = case.initial(grid.centers())
    final, diag = run(u0, SchemeSpec("roe"), case.model, grid, bc, 3.0, 0.1)
    assert diag.times[-1] == 0.1
    assert diag.nsteps == len(diag.dts) == len(diag.tv_history) == len(diag.ks)
    assert sum(diag.dts) == pytest.approx(0.1, rel=1e-12)
    assert final.shape == u0.shape
    # k equals the ceiling of the effective Courant number at every step
    for eff, k in zip(diag.courants, diag.ks):
        assert k == max(1, math.ceil(eff - 1e-9))


def test_run_roestar_reproducible_for_equal_seeds():
    case = build_case("burgers-square")
    grid = Grid1D(0.0, 1.0, 200)
    bc = BoundaryCondition("zero-gradient")
    u0 = case.initial(grid.centers())
    spec = SchemeSpec("roestar", seed=99)
    f1, d1 = run(u0, spec, case.model, grid, bc, 3.0, 0.1)
    f2, d2 = run(u0, SchemeSpec("roestar", seed=99), case.model, grid, bc, 3.0, 0.1)
    np.testing.assert_array_equal(f1, f2)
    assert d1.step_log() == d2.step_log()
    f3, _ = run(u0, SchemeSpec("roestar", seed=100), case.model, grid, bc, 3.0, 0.1)
    assert not np.array_equal(f1, f3)


def test_run_aborts_on_nonfinite_state_with_step_index():
    # overflowing flux values turn the state non-finite inside the first step
    grid = Grid1D(0.0, 1.0, 20)
    bc = BoundaryCondition("periodic")
    u0 = np.linspace(-1e200, 1e200, 20)
    with pytest.raises(RuntimeError, match="step 0"):
        run(u0, SchemeSpec("roe"), BurgersModel(), grid, bc, 2.0, 1.0)


def test_run_zero_field_finishes_without_motion():
    grid = Grid1D(0.0, 1.0, 20)
    bc = BoundaryCondition("zero-gradient")
    final, diag = run(np.zeros(20), SchemeSpec("roe"), BurgersModel(),
                      grid, bc, 2.0, 1.0)
    np.testing.assert_array_equal(final, np.zeros(20))
    assert diag.times[-1] == 1.0


def test_run_euler_diagnostics_are_per_component(tmp_path):
    case = build_case("sod")
    grid = Grid1D(0.0, 1.0, 100)
    bc = BoundaryCondition("zero-gradient")
    w0 = case.initial(grid.centers())
    _, diag = run(w0, SchemeSpec("roe"), case.model, grid, bc, 2.0, 0.01)
    assert np.shape(diag.tv_history[0]) == (3,)
    assert np.shape(diag.mass_history[0]) == (3,)
    text = diag.to_csv(tmp_path / "diag.csv")
    header = text.splitlines()[0].split(",")
    assert header == ["step", "t", "dt", "courant", "k", "tv_rho", "tv_mom",
                      "tv_ene", "min_tvd_residual", "mass_rho", "mass_mom",
                      "mass_ene"]
    assert len(text.strip().splitlines()) == diag.nsteps + 1


def test_diagnostics_csv_scalar_header(tmp_path):
    grid = Grid1D(0.0, 1.0, 50)
    bc = BoundaryCondition("zero-gradient")
    u0 = np.where(grid.centers() < 0.5, 1.0, 0.0)
    _, diag = run(u0, SchemeSpec("roe"), BurgersModel(), grid, bc, 2.0, 0.05)
    text = diag.to_csv(tmp_path / "d.csv")
    assert text.splitlines()[0] == "step,t,dt,courant,k,tv,min_tvd_residual,mass"
    # every float round-trips through repr
    row = text.splitlines()[1].split(",")
    assert float(row[1]) == diag.times[0] and float(row[5]) == diag.tv_history[0]
