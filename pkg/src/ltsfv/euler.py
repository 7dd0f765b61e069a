"""1D Euler equations: state algebra, Roe linearization, field-by-field
large-time-step splitting, and an exact Riemann solver used as reference.

Conserved variables are (rho, momentum, total energy density); primitive
variables are (rho, velocity, pressure) for an ideal gas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .coefficients import q_to_a
from .schemes import GODUNOV, ROE, InterfaceFluctuations, SchemeSpec, courant_coefficients

_CFL_SLACK = 1e-9


@dataclass
class GasModel:
    """Calorically perfect gas with ratio of specific heats gamma."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass
class EulerState:
    """Conserved state of one cell: density, momentum, total energy density."""

    rho: float
    mom: float
    ene: float

    def __post_init__(self):
        if not self.rho > 0.0:
            raise ValueError(f"density must be positive, got {self.rho}")
        if not self.internal_energy > 0.0:
            raise ValueError("internal energy must be positive (negative pressure state)")

    @property
    def internal_energy(self) -> float:
        return self.ene - 0.5 * self.mom * self.mom / self.rho

    @property
    def velocity(self) -> float:
        return self.mom / self.rho

    def pressure(self, gas: GasModel) -> float:
        return (gas.gamma - 1.0) * self.internal_energy

    def sound_speed(self, gas: GasModel) -> float:
        return math.sqrt(gas.gamma * self.pressure(gas) / self.rho)

    def enthalpy(self, gas: GasModel) -> float:
        return (self.ene + self.pressure(gas)) / self.rho

    def flux(self, gas: GasModel) -> np.ndarray:
        u = self.velocity
        p = self.pressure(gas)
        return np.array([self.mom, self.mom * u + p, (self.ene + p) * u])

    def to_array(self) -> np.ndarray:
        return np.array([self.rho, self.mom, self.ene])

    def to_primitive(self, gas: GasModel) -> tuple[float, float, float]:
        return (self.rho, self.velocity, self.pressure(gas))

    @classmethod
    def from_primitive(cls, rho: float, u: float, p: float, gas: GasModel) -> "EulerState":
        return cls(rho=rho, mom=rho * u, ene=p / (gas.gamma - 1.0) + 0.5 * rho * u * u)

    @classmethod
    def from_array(cls, arr) -> "EulerState":
        return cls(rho=float(arr[0]), mom=float(arr[1]), ene=float(arr[2]))


def primitives_to_field(rho, u, p, gas: GasModel) -> np.ndarray:
    """Stack primitive arrays into an (n, 3) conserved field."""
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    mom = rho * u
    ene = p / (gas.gamma - 1.0) + 0.5 * rho * u * u
    return np.stack([rho, mom, ene], axis=-1)


def field_to_primitives(field: np.ndarray, gas: GasModel):
    """Split an (n, 3) conserved field into primitive arrays (rho, u, p)."""
    rho = field[..., 0]
    u = field[..., 1] / rho
    p = (gas.gamma - 1.0) * (field[..., 2] - 0.5 * field[..., 1] * u)
    return rho, u, p


@dataclass
class RoeLinearization:
    """Roe eigenstructure at one interface.

    ``rvec[m]`` is the m-th right eigenvector, ``alpha[m]`` the corresponding
    wave strength; sum_m alpha[m] * rvec[m] reconstructs U_R - U_L and
    sum_m lam[m] * alpha[m] * rvec[m] equals f(U_R) - f(U_L).
    """

    lam: np.ndarray
    rvec: np.ndarray
    alpha: np.ndarray


def roe_linearize(left: EulerState, right: EulerState, gas: GasModel) -> RoeLinearization:
    """Standard density-square-root-weighted Roe averages and wave strengths."""
    sql = math.sqrt(left.rho)
    sqr = math.sqrt(right.rho)
    inv = 1.0 / (sql + sqr)
    u = (sql * left.velocity + sqr * right.velocity) * inv
    h = (sql * left.enthalpy(gas) + sqr * right.enthalpy(gas)) * inv
    a2 = (gas.gamma - 1.0) * (h - 0.5 * u * u)
    if not a2 > 0.0:
        raise ValueError(f"averaged sound speed squared nonpositive ({a2}); "
                         "vacuum-adjacent state pair")
    a = math.sqrt(a2)
    lam = np.array([u - a, u, u + a])
    rvec = np.array([
        [1.0, u - a, h - u * a],
        [1.0, u, 0.5 * u * u],
        [1.0, u + a, h + u * a],
    ])
    d_rho = right.rho - left.rho
    d_mom = right.mom - left.mom
    d_ene = right.ene - left.ene
    alpha1 = (gas.gamma - 1.0) / a2 * ((h - u * u) * d_rho + u * d_mom - d_ene)
    alpha0 = ((d_rho * (u + a) - d_mom) - a * alpha1) / (2.0 * a)
    alpha2 = d_rho - (alpha0 + alpha1)
    return RoeLinearization(lam=lam, rvec=rvec, alpha=np.array([alpha0, alpha1, alpha2]))


def split_eigenvalue(spec: SchemeSpec, lam: float, ratio: float,
                     k: int) -> tuple[np.ndarray, np.ndarray]:
    """Split one Roe eigenvalue into per-offset up/downwind speeds.

    For the Roe scheme the split is the clipping
    lam^{i+} = max(0, min(lam - i dx/dt, dx/dt)); every other
    Courant-parametrized scheme reuses its scalar fluctuation functions
    evaluated at C = ratio * lam.  Requires ratio * |lam| <= k.
    """
    if spec.kind == GODUNOV:
        raise ValueError("no closed-form Godunov splitting exists for systems")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    courant = ratio * lam
    if abs(courant) > k + _CFL_SLACK:
        raise ValueError(f"CFL violation: ratio*|lam|={abs(courant)} exceeds k={k}")
    rdx = 1.0 / ratio
    if spec.kind == ROE:
        lam_plus = np.array([max(0.0, min(lam - i * rdx, rdx)) for i in range(k)])
        lam_minus = np.array([min(0.0, max(lam + i * rdx, -rdx)) for i in range(k)])
        return lam_plus, lam_minus
    a = q_to_a(courant_coefficients(spec, courant, k), ratio)
    return a.a_plus, a.a_minus


def system_fluctuations(spec: SchemeSpec, lin: RoeLinearization, ratio: float,
                        k: int) -> InterfaceFluctuations:
    """Vector fluctuation products assembled field by field.

    plus_products[i] = sum_m lam_m^{i+} alpha_m rvec_m, and likewise for the
    minus products; the grand total telescopes to f(U_R) - f(U_L).
    """
    plus = np.zeros((k, 3))
    minus = np.zeros((k, 3))
    for m in range(3):
        lam_plus, lam_minus = split_eigenvalue(spec, lin.lam[m], ratio, k)
        wave = lin.alpha[m] * lin.rvec[m]
        plus += lam_plus[:, None] * wave[None, :]
        minus += lam_minus[:, None] * wave[None, :]
    return InterfaceFluctuations(k=k, plus_products=plus, minus_products=minus)


class ExactRiemannSolution:
    """Exact self-similar solution of the Euler Riemann problem.

    The star pressure solves the standard two-wave pressure function by
    bracketed root finding; sampling at xi = x/t walks the wave fan.
    Primitive inputs are (rho, u, p) triples.
    """

    def __init__(self, left, right, gas: GasModel, max_iter: int = 200):
        self.gas = gas
        self.rho_l, self.u_l, self.p_l = map(float, left)
        self.rho_r, self.u_r, self.p_r = map(float, right)
        if min(self.rho_l, self.rho_r, self.p_l, self.p_r) <= 0.0:
            raise ValueError("states must have positive density and pressure")
        g = gas.gamma
        self.a_l = math.sqrt(g * self.p_l / self.rho_l)
        self.a_r = math.sqrt(g * self.p_r / self.rho_r)
        if 2.0 / (g - 1.0) * (self.a_l + self.a_r) <= self.u_r - self.u_l:
            raise ValueError("initial states generate vacuum; not supported")

        def phi(p):
            return (self._wave_fn(p, self.p_l, self.rho_l, self.a_l)
                    + self._wave_fn(p, self.p_r, self.rho_r, self.a_r)
                    + (self.u_r - self.u_l))

        p_lo = 1e-14 * min(self.p_l, self.p_r)
        p_hi = max(self.p_l, self.p_r)
        it = 0
        while phi(p_hi) < 0.0:
            p_hi *= 2.0
            it += 1
            if it > max_iter:
                raise RuntimeError("failed to bracket the star pressure")
        self.p_star = brentq(phi, p_lo, p_hi, rtol=4 * np.finfo(float).eps,
                             maxiter=max_iter)
        self.u_star = 0.5 * (self.u_l + self.u_r) + 0.5 * (
            self._wave_fn(self.p_star, self.p_r, self.rho_r, self.a_r)
            - self._wave_fn(self.p_star, self.p_l, self.rho_l, self.a_l))
        self._build_waves()

    def _wave_fn(self, p, pk, rhok, ak):
        g = self.gas.gamma
        if p > pk:  # shock
            big_a = 2.0 / ((g + 1.0) * rhok)
            big_b = (g - 1.0) / (g + 1.0) * pk
            return (p - pk) * math.sqrt(big_a / (p + big_b))
        # rarefaction
        return 2.0 * ak / (g - 1.0) * ((p / pk) ** ((g - 1.0) / (2.0 * g)) - 1.0)

    def _build_waves(self):
        g = self.gas.gamma
        gp = (g + 1.0) / (2.0 * g)
        gm = (g - 1.0) / (2.0 * g)
        ratio_l = self.p_star / self.p_l
        ratio_r = self.p_star / self.p_r
        if self.p_star > self.p_l:
            self.left_wave = "shock"
            self.left_shock_speed = self.u_l - self.a_l * math.sqrt(gp * ratio_l + gm)
            gg = (g - 1.0) / (g + 1.0)
            self.rho_star_l = self.rho_l * (ratio_l + gg) / (gg * ratio_l + 1.0)
        else:
            self.left_wave = "rarefaction"
            self.rho_star_l = self.rho_l * ratio_l ** (1.0 / g)
            self.a_star_l = self.a_l * ratio_l ** gm
            self.left_head = self.u_l - self.a_l
            self.left_tail = self.u_star - self.a_star_l
        if self.p_star > self.p_r:
            self.right_wave = "shock"
            self.right_shock_speed = self.u_r + self.a_r * math.sqrt(gp * ratio_r + gm)
            gg = (g - 1.0) / (g + 1.0)
            self.rho_star_r = self.rho_r * (ratio_r + gg) / (gg * ratio_r + 1.0)
        else:
            self.right_wave = "rarefaction"
            self.rho_star_r = self.rho_r * ratio_r ** (1.0 / g)
            self.a_star_r = self.a_r * ratio_r ** gm
            self.right_head = self.u_r + self.a_r
            self.right_tail = self.u_star + self.a_star_r

    def _sample_one(self, xi: float) -> tuple[float, float, float]:
        g = self.gas.gamma
        if xi <= self.u_star:
            if self.left_wave == "shock":
                if xi < self.left_shock_speed:
                    return self.rho_l, self.u_l, self.p_l
                return self.rho_star_l, self.u_star, self.p_star
            if xi < self.left_head:
                return self.rho_l, self.u_l, self.p_l
            if xi > self.left_tail:
                return self.rho_star_l, self.u_star, self.p_star
            u = 2.0 / (g + 1.0) * (self.a_l + 0.5 * (g - 1.0) * self.u_l + xi)
            a = 2.0 / (g + 1.0) * (self.a_l + 0.5 * (g - 1.0) * (self.u_l - xi))
            rho = self.rho_l * (a / self.a_l) ** (2.0 / (g - 1.0))
            p = self.p_l * (a / self.a_l) ** (2.0 * g / (g - 1.0))
            return rho, u, p
        if self.right_wave == "shock":
            if xi > self.right_shock_speed:
                return self.rho_r, self.u_r, self.p_r
            return self.rho_star_r, self.u_star, self.p_star
        if xi > self.right_head:
            return self.rho_r, self.u_r, self.p_r
        if xi < self.right_tail:
            return self.rho_star_r, self.u_star, self.p_star
        u = 2.0 / (g + 1.0) * (-self.a_r + 0.5 * (g - 1.0) * self.u_r + xi)
        a = 2.0 / (g + 1.0) * (self.a_r - 0.5 * (g - 1.0) * (self.u_r - xi))
        rho = self.rho_r * (a / self.a_r) ** (2.0 / (g - 1.0))
        p = self.p_r * (a / self.a_r) ** (2.0 * g / (g - 1.0))
        return rho, u, p

    def sample(self, xi):
        """Primitive state(s) at similarity coordinate(s) xi = x/t."""
        if np.ndim(xi) == 0:
            return self._sample_one(float(xi))
        triples = [self._sample_one(float(x)) for x in np.asarray(xi).ravel()]
        rho, u, p = (np.array(col).reshape(np.shape(xi)) for col in zip(*triples))
        return rho, u, p


def exact_riemann(left, right, gas: GasModel, xi):
    """Exact Riemann solution sampled at xi = x/t (primitive in, primitive out)."""
    return ExactRiemannSolution(left, right, gas).sample(xi)
