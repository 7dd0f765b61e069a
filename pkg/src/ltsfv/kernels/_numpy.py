"""Pure-numpy implementations of the hot per-step kernels.

Vectorized over interfaces.  Expression text and evaluation order are kept in
lockstep with ltsfv.kernels._numba so that both backends produce identical
floating-point output; edit the two files together.
"""

import numpy as np

from ._codes import (CFL_SLACK, FLUX_BURGERS, SCHEME_LXF, SCHEME_ROELXF,
                     SCHEME_ROESTAR)


def _q_arrays(C, k, scheme, beta, delta):
    """Viscosity coefficients for every interface; zero-padded to index k+1."""
    m = C.size
    qp = np.zeros((m, k + 2))
    qm = np.zeros((m, k + 2))
    if scheme == SCHEME_LXF:
        q0 = np.full(m, float(k))
        for i in range(1, k):
            qm[:, i] = ((k - i) / (2.0 * k)) * (C + k)
            qp[:, i] = (k - i) - qm[:, i]
    elif scheme == SCHEME_ROELXF:
        q0 = beta * float(k) + (1.0 - beta) * np.abs(C)
        for i in range(1, k):
            qml = ((k - i) / (2.0 * k)) * (C + k)
            qpl = (k - i) - qml
            qm[:, i] = beta * qml + (1.0 - beta) * np.maximum(0.0, C - i)
            qp[:, i] = beta * qpl + (1.0 - beta) * np.maximum(0.0, -C - i)
    else:
        q0 = np.abs(C)
        for i in range(1, k):
            qm[:, i] = np.maximum(0.0, C - i)
            qp[:, i] = np.maximum(0.0, -C - i)
        if scheme == SCHEME_ROESTAR:
            smooth = (C * C + delta * delta) / (2.0 * delta)
            q0 = np.where(np.abs(C) < delta, smooth, q0)
    return q0, qp, qm


def _a_arrays(C, q0, qp, qm, rdx, k):
    """Fluctuation coefficients from the viscosity coefficients."""
    m = C.size
    ap = np.empty((m, k))
    am = np.empty((m, k))
    ap[:, 0] = 0.5 * rdx * ((C + q0) - 2.0 * qm[:, 1])
    am[:, 0] = 0.5 * rdx * ((C - q0) + 2.0 * qp[:, 1])
    for i in range(1, k):
        ap[:, i] = rdx * (qm[:, i] - qm[:, i + 1])
        am[:, i] = rdx * (qp[:, i + 1] - qp[:, i])
    return ap, am


def _resid_min(C, q0, qp, qm, k):
    """Smallest TVD inequality residual over the given interfaces."""
    if C.size == 0:
        return np.inf
    ra = ((1.0 - q0) + qm[:, 1]) + qp[:, 1]
    rbp = ((q0 - 4.0 * qp[:, 1]) + 2.0 * qp[:, 2]) - C
    rbm = ((q0 - 4.0 * qm[:, 1]) + 2.0 * qm[:, 2]) + C
    worst = min(ra.min(), rbp.min(), rbm.min())
    for i in range(1, k):
        rp = (qp[:, i] - 2.0 * qp[:, i + 1]) + qp[:, i + 2]
        rm = (qm[:, i] - 2.0 * qm[:, i + 1]) + qm[:, i + 2]
        worst = min(worst, rp.min(), rm.min())
    return worst


def _gather(u_ext, P, M, ratio, k, n):
    """Update the interior cells from the per-interface products."""
    if u_ext.ndim == 1:
        acc = np.zeros(n)
        center = u_ext[k:k + n]
    else:
        acc = np.zeros((n, u_ext.shape[1]))
        center = u_ext[k:k + n, :]
    for i in range(k):
        acc += P[k - 1 - i:k - 1 - i + n, i] + M[k + i:k + i + n, i]
    return center - ratio * acc


def scalar_courant_step(u_ext, ratio, k, scheme, beta, delta, flux, fparam):
    """One step of a Courant-parametrized scheme on a scalar field.

    ``u_ext`` carries k ghost cells on each side.  Returns the updated
    interior field and the smallest TVD residual over all interfaces.
    """
    n = u_ext.size - 2 * k
    rdx = 1.0 / ratio
    uL = u_ext[:-1]
    uR = u_ext[1:]
    if flux == FLUX_BURGERS:
        fL = 0.5 * uL * uL
        fR = 0.5 * uR * uR
        speed = uL
    else:
        fL = fparam * uL
        fR = fparam * uR
        speed = np.full(uL.size, fparam)
    d = uR - uL
    nz = d != 0.0
    C = np.empty(uL.size)
    C[nz] = ratio * ((fR[nz] - fL[nz]) / d[nz])
    C[~nz] = ratio * speed[~nz]
    if np.any(np.abs(C) > k + CFL_SLACK):
        raise ValueError("CFL violation: an interface Courant number exceeds k")
    q0, qp, qm = _q_arrays(C, k, scheme, beta, delta)
    ap, am = _a_arrays(C, q0, qp, qm, rdx, k)
    P = ap * d[:, None]
    M = am * d[:, None]
    u_new = _gather(u_ext, P, M, ratio, k, n)
    return u_new, _resid_min(C, q0, qp, qm, k)


def burgers_godunov_step(u_ext, ratio, k):
    """One large-time-step Godunov step for the Burgers flux.

    Fluctuation products come from exact extrema of f(u) - s*u over each
    interface range; candidates are the endpoints and the stationary point
    u = s.  Degenerate interfaces contribute nothing and are excluded from
    the TVD residual (their viscosity form is undefined); the residual is
    +inf when the field is constant.
    """
    n = u_ext.size - 2 * k
    rdx = 1.0 / ratio
    uL = u_ext[:-1]
    uR = u_ext[1:]
    m = uL.size
    d = uR - uL
    nz = d != 0.0
    lo = np.minimum(uL, uR)
    hi = np.maximum(uL, uR)
    if np.any(ratio * np.maximum(np.abs(lo), np.abs(hi)) > k + CFL_SLACK):
        raise ValueError("CFL violation: ratio*|u| exceeds k at an interface")
    flo = 0.5 * lo * lo
    fhi = 0.5 * hi * hi
    is_min = uL < uR
    E = np.empty((m, 2 * k + 1))
    for mm in range(-k, k + 1):
        s = mm * rdx
        wlo = flo - s * lo
        whi = fhi - s * hi
        e_val = np.where(is_min, np.minimum(wlo, whi), np.maximum(wlo, whi))
        interior = is_min & (lo < s) & (s < hi)
        e_val = np.where(interior, np.minimum(e_val, -0.5 * s * s), e_val)
        E[:, mm + k] = e_val
    P = np.empty((m, k))
    M = np.empty((m, k))
    for i in range(k):
        P[:, i] = (E[:, i + 1 + k] - E[:, i + k]) + rdx * uR
        M[:, i] = (E[:, k - i] - E[:, k - (i + 1)]) + rdx * uL
    P[~nz] = 0.0
    M[~nz] = 0.0
    u_new = _gather(u_ext, P, M, ratio, k, n)
    if not np.any(nz):
        return u_new, np.inf
    # jump-scaled TVD residuals: each inequality times |jump|, which stays
    # well conditioned where the plain viscosity form would divide by a
    # near-zero jump
    fL = 0.5 * uL * uL
    fR = 0.5 * uR * uR
    dz = d[nz]
    fLz = fL[nz]
    fRz = fR[nz]
    uLz = uL[nz]
    uRz = uR[nz]
    Ez = E[nz]
    sigma = np.where(dz > 0.0, 1.0, -1.0)
    cd = ratio * (fRz - fLz)
    q0d = ratio * ((fLz + fRz) - 2.0 * Ez[:, k])
    qpd = np.zeros((dz.size, k + 2))
    qmd = np.zeros((dz.size, k + 2))
    for i in range(1, k):
        qpd[:, i] = (ratio * fLz + i * uLz) - ratio * Ez[:, k - i]
        qmd[:, i] = (ratio * fRz - i * uRz) - ratio * Ez[:, k + i]
    worst = min(
        (sigma * (((dz - q0d) + qmd[:, 1]) + qpd[:, 1])).min(),
        (sigma * (((q0d - 4.0 * qpd[:, 1]) + 2.0 * qpd[:, 2]) - cd)).min(),
        (sigma * (((q0d - 4.0 * qmd[:, 1]) + 2.0 * qmd[:, 2]) + cd)).min())
    for i in range(1, k):
        rp = sigma * ((qpd[:, i] - 2.0 * qpd[:, i + 1]) + qpd[:, i + 2])
        rm = sigma * ((qmd[:, i] - 2.0 * qmd[:, i + 1]) + qmd[:, i + 2])
        worst = min(worst, rp.min(), rm.min())
    return u_new, worst


def euler_courant_step(w_ext, gamma, ratio, k, scheme, beta, delta):
    """One step of a Courant-parametrized scheme on the 1D Euler system.

    Field-by-field splitting through the Roe linearization; ``w_ext`` is the
    (n + 2k, 3) conserved field with ghost cells.  Returns the updated
    interior field and the smallest per-field TVD residual.
    """
    ntot = w_ext.shape[0]
    n = ntot - 2 * k
    rdx = 1.0 / ratio
    rho = w_ext[:, 0]
    mom = w_ext[:, 1]
    ene = w_ext[:, 2]
    if np.any(rho <= 0.0):
        raise ValueError("nonpositive density in the extended field")
    u = mom / rho
    p = (gamma - 1.0) * (ene - 0.5 * mom * u)
    if np.any(p <= 0.0):
        raise ValueError("nonpositive pressure in the extended field")
    h = (ene + p) / rho
    sq = np.sqrt(rho)
    sql = sq[:-1]
    sqr = sq[1:]
    inv = 1.0 / (sql + sqr)
    ut = (sql * u[:-1] + sqr * u[1:]) * inv
    ht = (sql * h[:-1] + sqr * h[1:]) * inv
    a2 = (gamma - 1.0) * (ht - 0.5 * ut * ut)
    if np.any(a2 <= 0.0):
        raise ValueError("vacuum-adjacent interface: averaged sound speed lost")
    at = np.sqrt(a2)
    d0 = rho[1:] - rho[:-1]
    d1 = mom[1:] - mom[:-1]
    d2 = ene[1:] - ene[:-1]
    alpha1 = (gamma - 1.0) / a2 * ((ht - ut * ut) * d0 + ut * d1 - d2)
    alpha0 = ((d0 * (ut + at) - d1) - at * alpha1) / (2.0 * at)
    alpha2 = d0 - (alpha0 + alpha1)
    m = ut.size
    P = np.zeros((m, k, 3))
    M = np.zeros((m, k, 3))
    worst = np.inf
    for wave in range(3):
        if wave == 0:
            lam = ut - at
            alpha = alpha0
            r1 = ut - at
            r2 = ht - ut * at
        elif wave == 1:
            lam = ut
            alpha = alpha1
            r1 = ut
            r2 = 0.5 * ut * ut
        else:
            lam = ut + at
            alpha = alpha2
            r1 = ut + at
            r2 = ht + ut * at
        C = ratio * lam
        if np.any(np.abs(C) > k + CFL_SLACK):
            raise ValueError("CFL violation: ratio*|eigenvalue| exceeds k")
        q0, qp, qm = _q_arrays(C, k, scheme, beta, delta)
        ap, am = _a_arrays(C, q0, qp, qm, rdx, k)
        worst = min(worst, _resid_min(C, q0, qp, qm, k))
        w0 = alpha * 1.0
        w1 = alpha * r1
        w2 = alpha * r2
        for i in range(k):
            P[:, i, 0] += ap[:, i] * w0
            P[:, i, 1] += ap[:, i] * w1
            P[:, i, 2] += ap[:, i] * w2
            M[:, i, 0] += am[:, i] * w0
            M[:, i, 1] += am[:, i] * w1
            M[:, i, 2] += am[:, i] * w2
    w_new = _gather(w_ext, P, M, ratio, k, n)
    return w_new, worst
