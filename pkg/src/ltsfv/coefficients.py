"""Coefficient algebra of local (2k+1)-point schemes.

A scheme is parametrized either by partial numerical viscosity coefficients
(Q0, Q^{i+}, Q^{i-}) or by flux-difference-splitting fluctuations (A^{i+},
A^{i-}); the two parametrizations are linked by an exact linear bijection.
This module holds both containers, the transforms, the TVD inequality
checker, the Roe/Lax-Friedrichs envelope check, and the modified-equation
diffusion measure.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

#: Default slack for residual checks.  Boundary schemes (Roe, LxF) sit exactly
#: on the TVD limits, so exact-zero residuals must not flip sign under
#: round-off.
DEFAULT_TOL = 1e-12


def _as_coeff_array(values, length: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (length,):
        raise ValueError(f"{name} must have shape ({length},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass
class ViscositySet:
    """Viscosity-form coefficients of one interface.

    ``q_plus[i-1]`` holds Q^{i+} for i = 1..k-1 (likewise ``q_minus``);
    coefficients with i >= k are zero by convention and are not stored.
    ``courant`` is the signed interface Courant number the set was built for.
    """

    k: int
    q0: float
    q_plus: np.ndarray
    q_minus: np.ndarray
    courant: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        self.q_plus = _as_coeff_array(self.q_plus, self.k - 1, "q_plus")
        self.q_minus = _as_coeff_array(self.q_minus, self.k - 1, "q_minus")
        if not (np.isfinite(self.q0) and np.isfinite(self.courant)):
            raise ValueError("q0 and courant must be finite")

    def padded_plus(self, extra: int = 2) -> np.ndarray:
        """Q^{i+} indexed directly by i, zero-padded up to i = k + extra - 1."""
        out = np.zeros(self.k + extra)
        out[1:self.k] = self.q_plus
        return out

    def padded_minus(self, extra: int = 2) -> np.ndarray:
        out = np.zeros(self.k + extra)
        out[1:self.k] = self.q_minus
        return out


@dataclass
class FluctuationSet:
    """Flux-difference-splitting coefficients of one interface.

    ``a_plus[i]`` holds A^{i+} for i = 0..k-1 (units of dx/dt); ``ratio``
    is dt/dx.
    """

    k: int
    a_plus: np.ndarray
    a_minus: np.ndarray
    ratio: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        self.a_plus = _as_coeff_array(self.a_plus, self.k, "a_plus")
        self.a_minus = _as_coeff_array(self.a_minus, self.k, "a_minus")
        if not (np.isfinite(self.ratio) and self.ratio > 0):
            raise ValueError(f"ratio must be positive and finite, got {self.ratio}")


@dataclass
class TvdReport:
    """Residuals of every TVD inequality instance for one coefficient set.

    Residual ids: ``c0`` is 1 - Q0 + Q^{1-} + Q^{1+}; ``c1+``/``c1-`` are
    Q0 - 4 Q^{1+-} + 2 Q^{2+-} -+ C; ``c{j}+``/``c{j}-`` for j >= 2 are the
    convexity conditions Q^{i+-} - 2 Q^{(i+1)+-} + Q^{(i+2)+-} with i = j-1.
    The scheme is TVD iff every residual is nonnegative.
    """

    residuals: list[tuple[str, float]]
    satisfied: bool
    tol: float = DEFAULT_TOL

    @property
    def min_residual(self) -> float:
        return min(v for _, v in self.residuals)

    def to_text(self) -> str:
        lines = [f"{'inequality':<12} residual"]
        for name, value in self.residuals:
            lines.append(f"{name:<12} {value!r}")
        lines.append(f"satisfied: {self.satisfied} (tol={self.tol!r})")
        return "\n".join(lines)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        buf.write("inequality,residual\n")
        for name, value in self.residuals:
            buf.write(f"{name},{float(value)!r}\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(text)
        return text


@dataclass
class BoundEntry:
    name: str
    value: float
    lower: float
    upper: float

    @property
    def ok(self) -> bool:
        return self.lower_margin >= 0.0 and self.upper_margin >= 0.0

    @property
    def lower_margin(self) -> float:
        return self.value - self.lower

    @property
    def upper_margin(self) -> float:
        return self.upper - self.value


@dataclass
class BoundsReport:
    """Comparison of a coefficient set against the Roe/LxF envelope."""

    entries: list[BoundEntry]
    satisfied: bool
    tol: float = DEFAULT_TOL

    @property
    def worst_lower_margin(self) -> float:
        return min(e.lower_margin for e in self.entries)

    @property
    def worst_upper_margin(self) -> float:
        return min(e.upper_margin for e in self.entries)


def q_to_a(v: ViscositySet, ratio: float) -> FluctuationSet:
    """Transform viscosity coefficients into fluctuation coefficients.

    Exact linear map; ``ratio`` is dt/dx.
    """
    if not (np.isfinite(ratio) and ratio > 0):
        raise ValueError(f"ratio must be positive and finite, got {ratio}")
    k = v.k
    rdx = 1.0 / ratio
    qp = v.padded_plus(extra=1)
    qm = v.padded_minus(extra=1)
    a_plus = np.empty(k)
    a_minus = np.empty(k)
    a_plus[0] = 0.5 * rdx * ((v.courant + v.q0) - 2.0 * qm[1])
    a_minus[0] = 0.5 * rdx * ((v.courant - v.q0) + 2.0 * qp[1])
    for i in range(1, k):
        a_plus[i] = rdx * (qm[i] - qm[i + 1])
        a_minus[i] = rdx * (qp[i + 1] - qp[i])
    return FluctuationSet(k=k, a_plus=a_plus, a_minus=a_minus, ratio=ratio)


def a_to_q(a: FluctuationSet) -> ViscositySet:
    """Transform fluctuation coefficients back into viscosity coefficients.

    Tail partial sums of the fluctuations give the Q entries; the interface
    Courant number is recovered as ratio * sum(A^{i+} + A^{i-}).
    """
    k = a.k
    ratio = a.ratio
    # tail_plus[i] = sum_{p >= i} a_plus[p]
    tail_plus = np.cumsum(a.a_plus[::-1])[::-1]
    tail_minus = np.cumsum(a.a_minus[::-1])[::-1]
    q_minus = ratio * tail_plus[1:]
    q_plus = -ratio * tail_minus[1:]
    q0 = ratio * (tail_plus[0] - tail_minus[0])
    courant = ratio * (tail_plus[0] + tail_minus[0])
    return ViscositySet(k=k, q0=q0, q_plus=q_plus, q_minus=q_minus, courant=courant)


def tvd_residuals(v: ViscositySet) -> list[tuple[str, float]]:
    """All TVD inequality residuals for the set (see :class:`TvdReport`)."""
    qp = v.padded_plus(extra=2)
    qm = v.padded_minus(extra=2)
    c = v.courant
    residuals = [("c0", ((1.0 - v.q0) + qm[1]) + qp[1])]
    residuals.append(("c1+", ((v.q0 - 4.0 * qp[1]) + 2.0 * qp[2]) - c))
    residuals.append(("c1-", ((v.q0 - 4.0 * qm[1]) + 2.0 * qm[2]) + c))
    for i in range(1, v.k):
        residuals.append((f"c{i + 1}+", (qp[i] - 2.0 * qp[i + 1]) + qp[i + 2]))
        residuals.append((f"c{i + 1}-", (qm[i] - 2.0 * qm[i + 1]) + qm[i + 2]))
    return residuals


def check_tvd(v: ViscositySet, tol: float = DEFAULT_TOL) -> TvdReport:
    """Evaluate every TVD inequality; satisfied iff min residual >= -tol."""
    if tol < 0:
        raise ValueError(f"tol must be nonnegative, got {tol}")
    residuals = tvd_residuals(v)
    satisfied = min(value for _, value in residuals) >= -tol
    return TvdReport(residuals=residuals, satisfied=satisfied, tol=tol)


def check_bounds(v: ViscositySet, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Check the set against the sharp Roe lower / LxF upper envelope.

    Requires |C| <= k; outside that no TVD scheme exists and the comparison
    is rejected.
    """
    k = v.k
    c = v.courant
    if abs(c) > k * (1.0 + 1e-12) + 1e-12:
        raise ValueError(
            f"|courant|={abs(c)} exceeds k={k}: no TVD scheme exists at this interface")
    entries = [BoundEntry("Q0", v.q0, abs(c), float(k))]
    for i in range(1, k):
        upper = (k - i) / (2.0 * k)
        entries.append(BoundEntry(f"Q{i}+", v.q_plus[i - 1],
                                  max(0.0, -c - i), upper * (-c + k)))
        entries.append(BoundEntry(f"Q{i}-", v.q_minus[i - 1],
                                  max(0.0, c - i), upper * (c + k)))
    satisfied = all(e.lower_margin >= -tol and e.upper_margin >= -tol for e in entries)
    return BoundsReport(entries=entries, satisfied=satisfied, tol=tol)


def diffusion_D(v: ViscositySet, c: float) -> float:
    """Modified-equation diffusion D = Q0 - c**2 + sum_i 2 (Q^{i-} + Q^{i+}).

    ``v`` must have been built at a degenerate interface whose pointwise
    Courant number is ``c`` (i.e. v.courant == c); the coefficients are then
    the frozen-state values entering the second-order modified equation.
    """
    if abs(v.courant - c) > 1e-12 * max(1.0, abs(c)):
        raise ValueError(
            f"set was built for courant={v.courant}, not the requested c={c}; "
            "D is only meaningful for a degenerate-interface set")
    return (v.q0 - c * c) + 2.0 * float(np.sum(v.q_minus) + np.sum(v.q_plus))
