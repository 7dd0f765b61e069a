"""Scalar conservation-law flux models and interface wave-speed utilities.

A flux model bundles the pointwise flux f(u), its derivative, the stationary
points of f(u) - s*u (which make exact interval extrema computable), and a
bound on |f'| over an interval.  Large-time-step Godunov fluxes are built from
exact extrema of f(u) - s*u over the interface range, so sampling-based
approximations are not acceptable here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class FluxModel:
    """Base class for scalar fluxes.

    ``eval`` and ``deriv`` must accept floats and numpy arrays alike.
    ``stationary_points(s)`` returns all real solutions of f'(u) = s; models
    without a closed form for these cannot guarantee exact extrema and should
    not subclass this.
    """

    def eval(self, u):
        raise NotImplementedError

    def deriv(self, u):
        raise NotImplementedError

    def stationary_points(self, s: float) -> tuple[float, ...]:
        raise NotImplementedError

    def wavespeed_bound(self, lo: float, hi: float) -> float:
        """Maximum of |f'(u)| over [lo, hi]."""
        raise NotImplementedError


class BurgersModel(FluxModel):
    """f(u) = u**2 / 2.  The single stationary point of f(u) - s*u is u = s."""

    def eval(self, u):
        return 0.5 * u * u

    def deriv(self, u):
        return u

    def stationary_points(self, s):
        return (s,)

    def wavespeed_bound(self, lo, hi):
        return max(abs(lo), abs(hi))

    def __repr__(self):
        return "BurgersModel()"


@dataclass
class AdvectionModel(FluxModel):
    """Linear flux f(u) = a*u; extrema of f - s*u always sit on endpoints."""

    a: float

    def eval(self, u):
        return self.a * u

    def deriv(self, u):
        return self.a * np.ones_like(np.asarray(u, dtype=float)) if np.ndim(u) else self.a

    def stationary_points(self, s):
        return ()

    def wavespeed_bound(self, lo, hi):
        return abs(self.a)


def _check_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


def local_courant(model: FluxModel, u_left: float, u_right: float, ratio: float) -> float:
    """Signed interface Courant number for the pair (u_left, u_right).

    ``ratio`` is dt/dx.  The degenerate branch u_left == u_right (exact
    floating-point equality, no threshold) uses f'(u); otherwise the secant
    slope (f(u_right) - f(u_left)) / (u_right - u_left) is used.
    """
    _check_finite(u_left=u_left, u_right=u_right, ratio=ratio)
    if ratio <= 0.0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    if u_left == u_right:
        return ratio * model.deriv(u_left)
    return ratio * ((model.eval(u_right) - model.eval(u_left)) / (u_right - u_left))


def osher_extremum(model: FluxModel, s: float, interval: tuple[float, float],
                   mode: str) -> float:
    """Exact extremum of f(u) - s*u over [lo, hi].

    Candidates are the two endpoints plus any stationary point f'(u) = s that
    falls inside the interval.  ``mode`` is "min" or "max".
    """
    lo, hi = interval
    _check_finite(s=s, lo=lo, hi=hi)
    if lo > hi:
        raise ValueError(f"empty interval: lo={lo} > hi={hi}")
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    candidates = [lo, hi]
    for u in model.stationary_points(s):
        if lo < u < hi:
            candidates.append(u)
    values = [model.eval(u) - s * u for u in candidates]
    return min(values) if mode == "min" else max(values)


def max_wavespeed(model: FluxModel, states: Sequence[float]) -> float:
    """Largest |f'| over the hulls of adjacent state pairs.

    For a single state the bound of the degenerate interval is returned.
    """
    u = np.asarray(states, dtype=float)
    if u.size == 0:
        raise ValueError("states must be non-empty")
    if not np.all(np.isfinite(u)):
        raise ValueError("states must be finite")
    if u.size == 1:
        return model.wavespeed_bound(u[0], u[0])
    lo = np.minimum(u[:-1], u[1:])
    hi = np.maximum(u[:-1], u[1:])
    return max(model.wavespeed_bound(a, b) for a, b in zip(lo, hi))
