"""Grid, boundaries, time-step selection, the conservative update loop, and
per-step diagnostics (total variation, TVD residuals, mass)."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coefficients import tvd_residuals
from .euler import GasModel, field_to_primitives
from .rng import XorShift64Star
from .scalar_flux import (AdvectionModel, BurgersModel, FluxModel,
                          local_courant, max_wavespeed)
from .schemes import (GODUNOV, LXF, ROE, ROELXF, ROESTAR, SchemeSpec,
                      courant_coefficients, godunov_jump_scaled_residuals,
                      interface_fluctuations)

_SCHEME_CODE = {
    ROE: kernels.SCHEME_ROE,
    LXF: kernels.SCHEME_LXF,
    ROELXF: kernels.SCHEME_ROELXF,
    ROESTAR: kernels.SCHEME_ROESTAR,
}

#: Guard against float noise when turning an effective Courant number into the
#: integer stencil half-width.
_CEIL_GUARD = 1e-9


@dataclass
class Grid1D:
    """Uniform cell-centered grid on [xlo, xhi]."""

    xlo: float
    xhi: float
    ncells: int

    def __post_init__(self):
        if not self.xhi > self.xlo:
            raise ValueError(f"empty domain: [{self.xlo}, {self.xhi}]")
        if self.ncells < 1:
            raise ValueError(f"ncells must be positive, got {self.ncells}")

    @property
    def dx(self) -> float:
        return (self.xhi - self.xlo) / self.ncells

    def centers(self) -> np.ndarray:
        return self.xlo + (np.arange(self.ncells) + 0.5) * self.dx


@dataclass
class BoundaryCondition:
    """Ghost-cell fill rule: "zero-gradient" extrapolation or "periodic"."""

    kind: str = "zero-gradient"

    def __post_init__(self):
        if self.kind not in ("zero-gradient", "periodic"):
            raise ValueError(f"unknown boundary kind {self.kind!r}")

    def extend(self, state: np.ndarray, k: int) -> np.ndarray:
        """Return the field padded with k ghost cells on each side."""
        if self.kind == "periodic":
            if state.shape[0] < k:
                raise ValueError("periodic ghost band wider than the field")
            return np.concatenate([state[-k:], state, state[:k]], axis=0)
        first = np.repeat(state[:1], k, axis=0)
        last = np.repeat(state[-1:], k, axis=0)
        return np.concatenate([first, state, last], axis=0)


@dataclass
class Diagnostics:
    """Per-step run history: (n, t, dt, Courant, k), TV and mass per component,
    and the smallest TVD residual over the coefficient sets actually applied.

    Godunov-path residuals are jump-scaled (each inequality times the positive
    |jump|), so their sign certifies the same conditions while magnitudes are
    not comparable across schemes."""

    steps: list = field(default_factory=list)
    times: list = field(default_factory=list)
    dts: list = field(default_factory=list)
    courants: list = field(default_factory=list)
    ks: list = field(default_factory=list)
    tv_history: list = field(default_factory=list)
    tvd_residuals: list = field(default_factory=list)
    mass_history: list = field(default_factory=list)

    @property
    def nsteps(self) -> int:
        return len(self.steps)

    def step_log(self):
        return list(zip(self.steps, self.times, self.dts, self.courants, self.ks))

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        ncomp = np.size(self.tv_history[0]) if self.tv_history else 1
        if ncomp == 1:
            buf.write("step,t,dt,courant,k,tv,min_tvd_residual,mass\n")
        else:
            tv_cols = ",".join(f"tv_{c}" for c in ("rho", "mom", "ene"))
            mass_cols = ",".join(f"mass_{c}" for c in ("rho", "mom", "ene"))
            buf.write(f"step,t,dt,courant,k,{tv_cols},min_tvd_residual,{mass_cols}\n")
        for idx in range(self.nsteps):
            tv = np.atleast_1d(self.tv_history[idx])
            mass = np.atleast_1d(self.mass_history[idx])
            cells = [str(self.steps[idx]), repr(float(self.times[idx])),
                     repr(float(self.dts[idx])), repr(float(self.courants[idx])),
                     str(self.ks[idx])]
            cells += [repr(float(v)) for v in tv]
            cells.append(repr(float(self.tvd_residuals[idx])))
            cells += [repr(float(v)) for v in mass]
            buf.write(",".join(cells) + "\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(text)
        return text


def total_variation(state) -> float | np.ndarray:
    """Sum of |U_{j+1} - U_j| over interior interfaces (per component)."""
    arr = np.asarray(state, dtype=float)
    if arr.shape[0] < 2:
        raise ValueError("total variation needs at least two cells")
    return np.sum(np.abs(np.diff(arr, axis=0)), axis=0)


def select_timestep(spec: SchemeSpec, target_courant: float, max_speed: float,
                    dx: float, t_remaining: float, rng: XorShift64Star | None = None
                    ) -> tuple[float, float, int]:
    """Pick (dt, effective Courant, stencil half-width k) for one step.

    Deterministic schemes run at the target Courant number; randomized
    stepping draws effective = target + U(-1/2, 1/2).  dt is clamped to the
    remaining time and the Courant number and k follow the clamped dt.
    """
    if not max_speed > 0.0:
        raise ValueError(f"max_speed must be positive, got {max_speed}")
    if not t_remaining > 0.0:
        raise ValueError(f"t_remaining must be positive, got {t_remaining}")
    if not target_courant > 0.0:
        raise ValueError(f"target_courant must be positive, got {target_courant}")
    if spec.uses_random_step:
        if not target_courant > 0.5:
            raise ValueError("randomized stepping needs target_courant > 1/2 "
                             "so the drawn Courant number stays positive")
        if rng is None:
            raise ValueError("randomized stepping needs an rng")
        effective = target_courant + rng.symmetric()
    else:
        effective = target_courant
    dt = effective * dx / max_speed
    if dt > t_remaining:
        dt = t_remaining
        effective = dt * max_speed / dx
    k = max(1, math.ceil(effective - _CEIL_GUARD))
    return dt, effective, k


def _max_speed(problem, state: np.ndarray, bc: BoundaryCondition) -> float:
    if isinstance(problem, GasModel):
        rho, u, p = field_to_primitives(state, problem)
        return float(np.max(np.abs(u) + np.sqrt(problem.gamma * p / rho)))
    states = state
    if bc.kind == "periodic":
        states = np.append(state, state[0])
    return max_wavespeed(problem, states)


def _flux_code(model) -> tuple[int, float] | None:
    if isinstance(model, BurgersModel):
        return kernels.FLUX_BURGERS, 0.0
    if isinstance(model, AdvectionModel):
        return kernels.FLUX_ADVECTION, model.a
    return None


def _reference_scalar_step(spec: SchemeSpec, model: FluxModel, u_ext: np.ndarray,
                           ratio: float, k: int) -> tuple[np.ndarray, float]:
    """Per-interface scalar update built from the public operations.

    Slow path used for flux models without a dedicated kernel; also the
    reference the kernel backends are tested against.
    """
    n = u_ext.size - 2 * k
    m = u_ext.size - 1
    plus = np.zeros((m, k))
    minus = np.zeros((m, k))
    worst = np.inf
    for e in range(m):
        u_left = u_ext[e]
        u_right = u_ext[e + 1]
        fl = interface_fluctuations(spec, model, u_left, u_right, ratio, k)
        plus[e] = fl.plus_products
        minus[e] = fl.minus_products
        if spec.kind == GODUNOV:
            if u_left == u_right:
                continue
            residuals = godunov_jump_scaled_residuals(model, u_left, u_right, ratio, k)
        else:
            courant = local_courant(model, u_left, u_right, ratio)
            residuals = tvd_residuals(courant_coefficients(spec, courant, k))
        worst = min(worst, min(r for _, r in residuals))
    u_new = np.empty(n)
    for j in range(n):
        s = 0.0
        for i in range(k):
            s += plus[j + k - 1 - i, i] + minus[j + k + i, i]
        u_new[j] = u_ext[j + k] - ratio * s
    return u_new, worst


def _advance(state: np.ndarray, spec: SchemeSpec, problem, dt: float,
             grid: Grid1D, bc: BoundaryCondition, k: int) -> tuple[np.ndarray, float]:
    """One conservative update; returns the new field and the smallest TVD
    residual of the coefficient sets that were actually applied."""
    ratio = dt / grid.dx
    if grid.ncells < 2 * k + 1:
        raise ValueError(f"grid too small for the stencil: ncells={grid.ncells} "
                         f"< 2k+1={2 * k + 1}")
    max_speed = _max_speed(problem, state, bc)
    if ratio * max_speed > k + 1e-8:
        raise ValueError(f"CFL violation: dt*max_speed/dx={ratio * max_speed} "
                         f"exceeds the stencil half-width k={k}")
    ext = bc.extend(state, k)
    beta = spec.beta if spec.beta is not None else 0.0
    delta = spec.delta if spec.delta is not None else 0.5
    if isinstance(problem, GasModel):
        if spec.kind == GODUNOV:
            raise ValueError("no closed-form Godunov scheme exists for systems; "
                             "pick a Courant-parametrized scheme")
        return kernels.euler_courant_step(ext, problem.gamma, ratio, k,
                                          _SCHEME_CODE[spec.kind], beta, delta)
    code = _flux_code(problem)
    if spec.kind == GODUNOV:
        if isinstance(problem, BurgersModel):
            return kernels.burgers_godunov_step(ext, ratio, k)
        return _reference_scalar_step(spec, problem, ext, ratio, k)
    if code is None:
        return _reference_scalar_step(spec, problem, ext, ratio, k)
    flux, fparam = code
    return kernels.scalar_courant_step(ext, ratio, k, _SCHEME_CODE[spec.kind],
                                       beta, delta, flux, fparam)


def step(state, spec: SchemeSpec, problem, dt: float, grid: Grid1D,
         bc: BoundaryCondition, k: int | None = None) -> np.ndarray:
    """Advance the field by one step of size dt.

    ``problem`` is a scalar FluxModel or a GasModel (Euler).  ``k`` defaults
    to the smallest stencil half-width covering dt*max_speed/dx; the CFL
    check rejects the step before any state is touched.
    """
    state = np.asarray(state, dtype=float)
    if k is None:
        ratio = dt / grid.dx
        k = max(1, math.ceil(ratio * _max_speed(problem, state, bc) - _CEIL_GUARD))
    new_state, _ = _advance(state, spec, problem, dt, grid, bc, k)
    return new_state


def run(state, spec: SchemeSpec, problem, grid: Grid1D, bc: BoundaryCondition,
        target_courant: float, t_end: float) -> tuple[np.ndarray, Diagnostics]:
    """March the field from t=0 to exactly t_end, collecting diagnostics.

    The last step is clamped to land on t_end; for randomized stepping the
    draw happens before clamping and the random stream is owned here, seeded
    from the scheme spec.
    """
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    state = np.array(state, dtype=float, copy=True)
    rng = XorShift64Star(spec.seed) if spec.uses_random_step else None
    diag = Diagnostics()
    t = 0.0
    n = 0
    while t < t_end:
        remaining = t_end - t
        max_speed = _max_speed(problem, state, bc)
        if max_speed == 0.0:
            # nothing moves; a single k=1 no-op step lands on t_end
            dt, effective, k = remaining, 0.0, 1
            resid = np.inf
        else:
            dt, effective, k = select_timestep(spec, target_courant, max_speed,
                                               grid.dx, remaining, rng)
            state, resid = _advance(state, spec, problem, dt, grid, bc, k)
        if not np.all(np.isfinite(state)):
            raise RuntimeError(f"non-finite state after step {n}")
        t = t_end if dt >= remaining else t + dt
        diag.steps.append(n)
        diag.times.append(t)
        diag.dts.append(dt)
        diag.courants.append(effective)
        diag.ks.append(k)
        diag.tv_history.append(total_variation(state))
        diag.tvd_residuals.append(resid)
        diag.mass_history.append(np.sum(state, axis=0))
        n += 1
    return state, diag
