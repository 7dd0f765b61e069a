"""Benchmark case definitions and their exact references."""

import numpy as np
import pytest

from ltsfv import BurgersModel, GasModel, build_case, total_variation
from ltsfv.euler import field_to_primitives


def test_unknown_case_rejected():
    with pytest.raises(ValueError, match="unknown case"):
        build_case("kelvin-helmholtz")


def test_burgers_square_initial_data():
    case = build_case("burgers-square")
    x = np.linspace(0.0005, 0.9995, 1000)
    u = case.initial(x)
    assert set(np.unique(u)) == {0.0, 1.0}
    assert u[(x > 0.31) & (x < 0.69)].min() == 1.0
    assert case.defaults["ncells"] == 800 and case.defaults["courant"] == 5.0
    assert case.defaults["t_end"] == 0.2 and case.defaults["delta"] == 0.5


def test_burgers_square_reference_structure():
    # at t=0.2: fan on [0.3, 0.5], plateau u=1 on [0.5, 0.8), shock at 0.8
    case = build_case("burgers-square")
    x = np.array([0.25, 0.35, 0.45, 0.55, 0.75, 0.79, 0.81, 0.9])
    u = case.reference(x, 0.2)
    np.testing.assert_allclose(u, [0.0, 0.25, 0.75, 1.0, 1.0, 1.0, 0.0, 0.0],
                               atol=1e-14)
    # characteristics oracle: u on the fan satisfies x = 0.3 + u*t
    fan_x = np.linspace(0.31, 0.49, 50)
    fan_u = case.reference(fan_x, 0.2)
    np.testing.assert_allclose(0.3 + fan_u * 0.2, fan_x, rtol=1e-13)


def test_burgers_square_reference_conserves_mass():
    # the shock speed follows from conservation; total mass stays 0.4
    case = build_case("burgers-square")
    x = np.linspace(0.0005, 0.9995, 1000)
    for t in (0.0, 0.1, 0.2, 0.4):
        mass = case.reference(x, t).sum() / 1000
        assert mass == pytest.approx(0.4, abs=2e-3)


def test_burgers_transonic_initial_total_variation():
    case = build_case("burgers-transonic")
    grid_x = (np.arange(800) + 0.5) / 800
    assert total_variation(case.initial(grid_x)) == 4.0


def test_burgers_transonic_reference_three_waves():
    case = build_case("burgers-transonic")
    t = 0.2
    x = np.array([0.10, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9])
    u = case.reference(x, t)
    # left shock at 0.15, fan on (0.3, 0.7), right shock at 0.85
    np.testing.assert_allclose(u, [0.0, -1.0, -0.5, 0.0, 0.5, 1.0, 0.0], atol=1e-14)


def test_advection_reference_translates():
    case = build_case("advection-shift")
    x = np.linspace(0.0005, 0.9995, 1000)
    np.testing.assert_array_equal(case.reference(x, 0.1), case.initial(x - 0.1))


def test_sod_initial_split():
    case = build_case("sod")
    x = np.array([0.25, 0.75])
    w = case.initial(x)
    rho, u, p = field_to_primitives(w, case.model)
    np.testing.assert_allclose(rho, [1.0, 0.125], atol=0)
    np.testing.assert_allclose(u, [0.0, 0.0], atol=0)
    np.testing.assert_allclose(p, [1.0, 0.1], rtol=1e-15)
    assert case.defaults["t_end"] == 0.25


def test_sod_reference_star_velocity_on_axis():
    case = build_case("sod")
    w = case.reference(np.array([0.5]), 0.1)
    rho, u, p = field_to_primitives(w, case.model)
    assert u[0] == pytest.approx(0.92745, abs=1e-4)
    assert p[0] == pytest.approx(0.30313, abs=1e-4)


def test_models_match_case_kind():
    assert isinstance(build_case("burgers-square").model, BurgersModel)
    assert isinstance(build_case("sod").model, GasModel)
