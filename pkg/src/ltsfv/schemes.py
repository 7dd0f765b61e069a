"""Per-interface coefficient generators for the large-time-step schemes.

Courant-parametrized schemes (Roe, LxF, RoeLxF(beta), Roe*) produce a
viscosity set from the interface Courant number alone; the Godunov scheme
needs the flux model since its coefficients involve exact flux extrema over
the interface range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import ViscositySet, q_to_a
from .scalar_flux import FluxModel, local_courant, osher_extremum

ROE = "roe"
LXF = "lxf"
ROELXF = "roelxf"
ROESTAR = "roestar"
GODUNOV = "godunov"

KINDS = (ROE, LXF, ROELXF, ROESTAR, GODUNOV)

#: Slack used when rejecting |C| > k; keeps exactly-critical interfaces legal.
_CFL_SLACK = 1e-9


@dataclass
class SchemeSpec:
    """Which scheme to run and its parameters.

    ``beta`` blends LxF into Roe (RoeLxF only, in [0, 1]); ``delta`` is the
    Harten-fix width (Roe* only, in (0, 1), default 0.5); ``seed`` feeds the
    randomized time stepping.  ``random_step`` overrides whether the driver
    randomizes the Courant number each step: Roe* defaults to True, everything
    else to False.  Setting it explicitly gives the diagnostic variants
    (random-step-only Roe, Harten-fix-only Roe*).
    """

    kind: str
    beta: float | None = None
    delta: float | None = None
    seed: int = 0
    random_step: bool | None = None

    def __post_init__(self):
        self.kind = self.kind.lower()
        if self.kind not in KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == ROELXF:
            if self.beta is None:
                raise ValueError("RoeLxF requires beta in [0, 1]")
            if not 0.0 <= self.beta <= 1.0:
                raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if self.kind == ROESTAR:
            if self.delta is None:
                self.delta = 0.5
            if not 0.0 < self.delta < 1.0:
                raise ValueError(f"delta must lie in (0, 1), got {self.delta}")

    @property
    def uses_random_step(self) -> bool:
        if self.random_step is not None:
            return self.random_step
        return self.kind == ROESTAR


@dataclass
class InterfaceFluctuations:
    """Fluctuation products A^{i+-} * (U_R - U_L) of one interface.

    Scalar problems store shape (k,) arrays, systems (k, ncomp).  The grand
    total over all products equals f(U_R) - f(U_L).
    """

    k: int
    plus_products: np.ndarray
    minus_products: np.ndarray

    def total(self) -> np.ndarray | float:
        return np.sum(self.plus_products, axis=0) + np.sum(self.minus_products, axis=0)


def _check_cfl(courant: float, k: int):
    if abs(courant) > k + _CFL_SLACK:
        raise ValueError(
            f"|C|={abs(courant)} exceeds the stencil half-width k={k}; "
            "no (2k+1)-point TVD scheme exists (CFL violation)")


def roe_q(courant: float, k: int) -> tuple[float, np.ndarray, np.ndarray]:
    """Roe viscosity coefficients: Q0 = |C|, Q^{i+-} = max(0, -+C - i)."""
    q0 = abs(courant)
    q_minus = np.array([max(0.0, courant - i) for i in range(1, k)])
    q_plus = np.array([max(0.0, -courant - i) for i in range(1, k)])
    return q0, q_plus, q_minus


def lxf_q(courant: float, k: int) -> tuple[float, np.ndarray, np.ndarray]:
    """LxF viscosity coefficients: Q0 = k, Q^{i+-} = (k-i)/(2k) (-+C + k)."""
    q0 = float(k)
    q_minus = np.empty(k - 1)
    q_plus = np.empty(k - 1)
    for i in range(1, k):
        q_minus[i - 1] = ((k - i) / (2.0 * k)) * (courant + k)
        # paired so that Q^{i+} + Q^{i-} = k - i exactly, which keeps the
        # first TVD residual an exact floating-point zero
        q_plus[i - 1] = (k - i) - q_minus[i - 1]
    return q0, q_plus, q_minus


def courant_coefficients(spec: SchemeSpec, courant: float, k: int) -> ViscositySet:
    """Viscosity set of a Courant-parametrized scheme at interface Courant C.

    Rejects |C| > k and the Godunov kind (which needs the flux model, see
    :func:`godunov_viscosities`).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not math.isfinite(courant):
        raise ValueError(f"courant must be finite, got {courant}")
    _check_cfl(courant, k)
    if spec.kind == GODUNOV:
        raise ValueError("the Godunov scheme is not Courant-parametrized; "
                         "use godunov_viscosities with a flux model")
    if spec.kind == ROE:
        q0, qp, qm = roe_q(courant, k)
    elif spec.kind == LXF:
        q0, qp, qm = lxf_q(courant, k)
    elif spec.kind == ROELXF:
        beta = spec.beta
        q0r, qpr, qmr = roe_q(courant, k)
        q0l, qpl, qml = lxf_q(courant, k)
        q0 = beta * q0l + (1.0 - beta) * q0r
        qp = beta * qpl + (1.0 - beta) * qpr
        qm = beta * qml + (1.0 - beta) * qmr
    else:  # ROESTAR: Harten-smoothed Q0, Roe elsewhere
        delta = spec.delta
        q0, qp, qm = roe_q(courant, k)
        if abs(courant) < delta:
            q0 = (courant * courant + delta * delta) / (2.0 * delta)
    return ViscositySet(k=k, q0=q0, q_plus=qp, q_minus=qm, courant=courant)


def _osher_m(model: FluxModel, u_left: float, u_right: float, s: float) -> float:
    """Extremum of f(u) - s*u over the interface range.

    Minimum when u_left < u_right, maximum otherwise (ties take the maximum
    branch; the result is the same for a degenerate interval).
    """
    lo, hi = (u_left, u_right) if u_left <= u_right else (u_right, u_left)
    mode = "min" if u_left < u_right else "max"
    return osher_extremum(model, s, (lo, hi), mode)


def godunov_fluctuations(model: FluxModel, u_left: float, u_right: float,
                         ratio: float, k: int) -> InterfaceFluctuations:
    """Godunov fluctuation products of one interface.

    ``k`` must cover the interface wave speeds (k >= ratio * max|f'| over the
    hull) so that all products beyond the stencil vanish.  A degenerate
    interface yields all-zero products.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    lo, hi = min(u_left, u_right), max(u_left, u_right)
    bound = ratio * model.wavespeed_bound(lo, hi)
    if k < bound - 1e-9:
        raise ValueError(
            f"stencil half-width k={k} does not cover ratio*wavespeed_bound={bound}")
    plus = np.zeros(k)
    minus = np.zeros(k)
    if u_left == u_right:
        return InterfaceFluctuations(k=k, plus_products=plus, minus_products=minus)
    rdx = 1.0 / ratio
    # extrema[m + k] holds the extremum of f(u) - (m * dx/dt) u, m = -k..k
    extrema = [_osher_m(model, u_left, u_right, m * rdx) for m in range(-k, k + 1)]
    for i in range(k):
        plus[i] = (extrema[i + 1 + k] - extrema[i + k]) + rdx * u_right
        minus[i] = (extrema[-i + k] - extrema[-(i + 1) + k]) + rdx * u_left
    return InterfaceFluctuations(k=k, plus_products=plus, minus_products=minus)


def godunov_viscosities(model: FluxModel, u_left: float, u_right: float,
                        ratio: float, k: int | None = None) -> ViscositySet:
    """Godunov viscosity coefficients of one nondegenerate interface.

    The viscosity form divides by the jump, so u_left == u_right is rejected;
    use :func:`godunov_fluctuations` for degenerate interfaces.  ``k``
    defaults to ceil(ratio * max|f'|) over the hull.
    """
    if u_left == u_right:
        raise ValueError("degenerate interface (u_left == u_right): the viscosity "
                         "form divides by the jump; use godunov_fluctuations")
    lo, hi = min(u_left, u_right), max(u_left, u_right)
    bound = ratio * model.wavespeed_bound(lo, hi)
    if k is None:
        k = max(1, math.ceil(bound - 1e-9))
    elif k < bound - 1e-9:
        raise ValueError(
            f"stencil half-width k={k} does not cover ratio*wavespeed_bound={bound}")
    rdx = 1.0 / ratio
    d = u_right - u_left
    f_left = model.eval(u_left)
    f_right = model.eval(u_right)
    m0 = _osher_m(model, u_left, u_right, 0.0)
    q0 = ratio * (((f_left + f_right) - 2.0 * m0) / d)
    q_plus = np.empty(k - 1)
    q_minus = np.empty(k - 1)
    for i in range(1, k):
        m_plus = _osher_m(model, u_left, u_right, -i * rdx)
        m_minus = _osher_m(model, u_left, u_right, i * rdx)
        q_plus[i - 1] = ((ratio * f_left + i * u_left) - ratio * m_plus) / d
        q_minus[i - 1] = ((ratio * f_right - i * u_right) - ratio * m_minus) / d
    courant = local_courant(model, u_left, u_right, ratio)
    return ViscositySet(k=k, q0=q0, q_plus=q_plus, q_minus=q_minus, courant=courant)


def godunov_jump_scaled_residuals(model: FluxModel, u_left: float, u_right: float,
                                  ratio: float, k: int) -> list[tuple[str, float]]:
    """TVD residuals of the Godunov set, scaled by |u_right - u_left|.

    The viscosity form divides by the jump, which is numerically meaningless
    for nearly equal states; multiplying each inequality by the positive |jump|
    certifies the same conditions from well-conditioned differences of flux
    extrema.  Rejects degenerate interfaces.
    """
    if u_left == u_right:
        raise ValueError("degenerate interface has no TVD residuals")
    rdx = 1.0 / ratio
    d = u_right - u_left
    sigma = 1.0 if d > 0.0 else -1.0
    f_left = model.eval(u_left)
    f_right = model.eval(u_right)
    extrema = [_osher_m(model, u_left, u_right, m * rdx) for m in range(-k, k + 1)]
    q0d = ratio * ((f_left + f_right) - 2.0 * extrema[k])
    cd = ratio * (f_right - f_left)
    qpd = np.zeros(k + 2)
    qmd = np.zeros(k + 2)
    for i in range(1, k):
        qpd[i] = (ratio * f_left + i * u_left) - ratio * extrema[k - i]
        qmd[i] = (ratio * f_right - i * u_right) - ratio * extrema[k + i]
    residuals = [("c0", sigma * (((d - q0d) + qmd[1]) + qpd[1]))]
    residuals.append(("c1+", sigma * (((q0d - 4.0 * qpd[1]) + 2.0 * qpd[2]) - cd)))
    residuals.append(("c1-", sigma * (((q0d - 4.0 * qmd[1]) + 2.0 * qmd[2]) + cd)))
    for i in range(1, k):
        residuals.append((f"c{i + 1}+", sigma * ((qpd[i] - 2.0 * qpd[i + 1]) + qpd[i + 2])))
        residuals.append((f"c{i + 1}-", sigma * ((qmd[i] - 2.0 * qmd[i + 1]) + qmd[i + 2])))
    return residuals


def interface_fluctuations(spec: SchemeSpec, model: FluxModel, u_left: float,
                           u_right: float, ratio: float, k: int) -> InterfaceFluctuations:
    """Fluctuation products of one interface for any scheme.

    Courant-parametrized schemes go through the viscosity coefficients and the
    exact Q -> A transform; Godunov goes through the flux extrema directly.
    """
    if spec.kind == GODUNOV:
        return godunov_fluctuations(model, u_left, u_right, ratio, k)
    courant = local_courant(model, u_left, u_right, ratio)
    v = courant_coefficients(spec, courant, k)
    a = q_to_a(v, ratio)
    d = u_right - u_left
    return InterfaceFluctuations(k=k, plus_products=a.a_plus * d,
                                 minus_products=a.a_minus * d)
