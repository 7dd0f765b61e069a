"""Benchmark case definitions: initial data, models, exact references.

Initial data is sampled at cell centers.  Each case carries its default run
parameters so the command line reproduces the standard setups with nothing
beyond a case and a scheme name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .euler import ExactRiemannSolution, GasModel, primitives_to_field
from .scalar_flux import AdvectionModel, BurgersModel

SOD_LEFT = (1.0, 0.0, 1.0)
SOD_RIGHT = (0.125, 0.0, 0.1)
SOD_SPLIT = 0.5


@dataclass
class CaseDefinition:
    """One benchmark problem: model, initial data, reference, defaults."""

    name: str
    kind: str  # "scalar" | "euler"
    domain: tuple[float, float]
    model: object
    initial: Callable[[np.ndarray], np.ndarray]
    reference: Callable[[np.ndarray, float], np.ndarray] | None
    defaults: dict = field(default_factory=dict)


def _square_pulse(x: np.ndarray) -> np.ndarray:
    return np.where((x > 0.3) & (x < 0.7), 1.0, 0.0)


def _burgers_square_exact(x: np.ndarray, t: float) -> np.ndarray:
    """Entropy solution of the unit square pulse under Burgers.

    Rarefaction fan from x=0.3, shock of speed 1/2 from x=0.7; valid until
    the fan reaches the shock at t=0.8.
    """
    if t == 0.0:
        return _square_pulse(x)
    if t > 0.8:
        raise ValueError("reference only valid for t <= 0.8 (fan hits the shock)")
    fan_end = 0.3 + t
    shock = 0.7 + 0.5 * t
    u = np.zeros_like(x)
    fan = (x > 0.3) & (x < fan_end)
    u[fan] = (x[fan] - 0.3) / t
    u[(x >= fan_end) & (x < shock)] = 1.0
    return u


def _transonic_initial(x: np.ndarray) -> np.ndarray:
    u = np.zeros_like(x)
    u[(x > 0.25) & (x <= 0.5)] = -1.0
    u[(x > 0.5) & (x < 0.75)] = 1.0
    return u


def _burgers_transonic_exact(x: np.ndarray, t: float) -> np.ndarray:
    """Three-wave solution: left shock (speed -1/2), transonic fan at x=0.5,
    right shock (speed 1/2); valid until the fan reaches a shock at t=0.5."""
    if t == 0.0:
        return _transonic_initial(x)
    if t > 0.5:
        raise ValueError("reference only valid for t <= 0.5")
    left_shock = 0.25 - 0.5 * t
    right_shock = 0.75 + 0.5 * t
    u = np.zeros_like(x)
    u[(x > left_shock) & (x <= 0.5 - t)] = -1.0
    fan = (x > 0.5 - t) & (x < 0.5 + t)
    u[fan] = (x[fan] - 0.5) / t
    u[(x >= 0.5 + t) & (x < right_shock)] = 1.0
    return u


def _advection_exact(x: np.ndarray, t: float) -> np.ndarray:
    return _square_pulse(x - t)


def _sod_initial(x: np.ndarray) -> np.ndarray:
    gas = GasModel()
    rho = np.where(x < SOD_SPLIT, SOD_LEFT[0], SOD_RIGHT[0])
    u = np.where(x < SOD_SPLIT, SOD_LEFT[1], SOD_RIGHT[1])
    p = np.where(x < SOD_SPLIT, SOD_LEFT[2], SOD_RIGHT[2])
    return primitives_to_field(rho, u, p, gas)


def _sod_exact(x: np.ndarray, t: float) -> np.ndarray:
    gas = GasModel()
    if t == 0.0:
        return _sod_initial(x)
    solution = ExactRiemannSolution(SOD_LEFT, SOD_RIGHT, gas)
    rho, u, p = solution.sample((x - SOD_SPLIT) / t)
    return primitives_to_field(rho, u, p, gas)


_CASES = {
    "burgers-square": lambda: CaseDefinition(
        name="burgers-square", kind="scalar", domain=(0.0, 1.0),
        model=BurgersModel(), initial=_square_pulse,
        reference=_burgers_square_exact,
        defaults={"ncells": 800, "t_end": 0.2, "courant": 5.0, "delta": 0.5,
                  "beta": 0.2, "bc": "zero-gradient"}),
    "burgers-transonic": lambda: CaseDefinition(
        name="burgers-transonic", kind="scalar", domain=(0.0, 1.0),
        model=BurgersModel(), initial=_transonic_initial,
        reference=_burgers_transonic_exact,
        defaults={"ncells": 800, "t_end": 0.2, "courant": 5.0, "delta": 0.5,
                  "beta": 0.2, "bc": "zero-gradient"}),
    "advection-shift": lambda: CaseDefinition(
        name="advection-shift", kind="scalar", domain=(0.0, 1.0),
        model=AdvectionModel(a=1.0), initial=_square_pulse,
        reference=_advection_exact,
        defaults={"ncells": 400, "t_end": 0.2, "courant": 2.0, "delta": 0.5,
                  "beta": 0.2, "bc": "zero-gradient"}),
    "sod": lambda: CaseDefinition(
        name="sod", kind="euler", domain=(0.0, 1.0),
        model=GasModel(gamma=1.4), initial=_sod_initial,
        reference=_sod_exact,
        defaults={"ncells": 1800, "t_end": 0.25, "courant": 3.0, "delta": 0.5,
                  "beta": 0.2, "bc": "zero-gradient"}),
}

CASE_NAMES = tuple(sorted(_CASES))


def build_case(name: str) -> CaseDefinition:
    """Look up a benchmark case by name."""
    try:
        factory = _CASES[name]
    except KeyError:
        raise ValueError(f"unknown case {name!r}; available: {', '.join(CASE_NAMES)}") \
            from None
    return factory()
