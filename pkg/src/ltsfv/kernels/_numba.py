"""numba implementations of the hot per-step kernels.

Per-interface loops compiled with @njit(cache=True).  Expression text and
evaluation order are kept in lockstep with ltsfv.kernels._numpy so that both
backends produce identical floating-point output; edit the two files together.
"""

import numpy as np
from numba import njit

from ._codes import (CFL_SLACK, FLUX_BURGERS, SCHEME_LXF, SCHEME_ROELXF,
                     SCHEME_ROESTAR)


@njit(cache=True)
def _q_fill(C, k, scheme, beta, delta, qp, qm):
    """Fill the zero-padded viscosity coefficients of one interface."""
    for idx in range(k + 2):
        qp[idx] = 0.0
        qm[idx] = 0.0
    if scheme == SCHEME_LXF:
        q0 = float(k)
        for i in range(1, k):
            qm[i] = ((k - i) / (2.0 * k)) * (C + k)
            qp[i] = (k - i) - qm[i]
    elif scheme == SCHEME_ROELXF:
        q0 = beta * float(k) + (1.0 - beta) * abs(C)
        for i in range(1, k):
            qml = ((k - i) / (2.0 * k)) * (C + k)
            qpl = (k - i) - qml
            qm[i] = beta * qml + (1.0 - beta) * max(0.0, C - i)
            qp[i] = beta * qpl + (1.0 - beta) * max(0.0, -C - i)
    else:
        q0 = abs(C)
        for i in range(1, k):
            qm[i] = max(0.0, C - i)
            qp[i] = max(0.0, -C - i)
        if scheme == SCHEME_ROESTAR:
            if abs(C) < delta:
                q0 = (C * C + delta * delta) / (2.0 * delta)
    return q0


@njit(cache=True)
def _a_fill(C, q0, qp, qm, rdx, k, ap, am):
    ap[0] = 0.5 * rdx * ((C + q0) - 2.0 * qm[1])
    am[0] = 0.5 * rdx * ((C - q0) + 2.0 * qp[1])
    for i in range(1, k):
        ap[i] = rdx * (qm[i] - qm[i + 1])
        am[i] = rdx * (qp[i + 1] - qp[i])


@njit(cache=True)
def _resid_min(C, q0, qp, qm, k):
    worst = ((1.0 - q0) + qm[1]) + qp[1]
    rbp = ((q0 - 4.0 * qp[1]) + 2.0 * qp[2]) - C
    if rbp < worst:
        worst = rbp
    rbm = ((q0 - 4.0 * qm[1]) + 2.0 * qm[2]) + C
    if rbm < worst:
        worst = rbm
    for i in range(1, k):
        rp = (qp[i] - 2.0 * qp[i + 1]) + qp[i + 2]
        if rp < worst:
            worst = rp
        rm = (qm[i] - 2.0 * qm[i + 1]) + qm[i + 2]
        if rm < worst:
            worst = rm
    return worst


@njit(cache=True)
def scalar_courant_step(u_ext, ratio, k, scheme, beta, delta, flux, fparam):
    n = u_ext.size - 2 * k
    m = u_ext.size - 1
    rdx = 1.0 / ratio
    P = np.empty((m, k))
    M = np.empty((m, k))
    qp = np.zeros(k + 2)
    qm = np.zeros(k + 2)
    ap = np.empty(k)
    am = np.empty(k)
    worst = np.inf
    for e in range(m):
        uL = u_ext[e]
        uR = u_ext[e + 1]
        if flux == FLUX_BURGERS:
            fL = 0.5 * uL * uL
            fR = 0.5 * uR * uR
            speed = uL
        else:
            fL = fparam * uL
            fR = fparam * uR
            speed = fparam
        d = uR - uL
        if d != 0.0:
            C = ratio * ((fR - fL) / d)
        else:
            C = ratio * speed
        if abs(C) > k + CFL_SLACK:
            raise ValueError("CFL violation: an interface Courant number exceeds k")
        q0 = _q_fill(C, k, scheme, beta, delta, qp, qm)
        _a_fill(C, q0, qp, qm, rdx, k, ap, am)
        r = _resid_min(C, q0, qp, qm, k)
        if r < worst:
            worst = r
        for i in range(k):
            P[e, i] = ap[i] * d
            M[e, i] = am[i] * d
    u_new = np.empty(n)
    for j in range(n):
        s = 0.0
        for i in range(k):
            s += P[j + k - 1 - i, i] + M[j + k + i, i]
        u_new[j] = u_ext[j + k] - ratio * s
    return u_new, worst


@njit(cache=True)
def burgers_godunov_step(u_ext, ratio, k):
    n = u_ext.size - 2 * k
    m = u_ext.size - 1
    rdx = 1.0 / ratio
    P = np.empty((m, k))
    M = np.empty((m, k))
    E = np.empty(2 * k + 1)
    qp = np.zeros(k + 2)
    qm = np.zeros(k + 2)
    worst = np.inf
    for e in range(m):
        uL = u_ext[e]
        uR = u_ext[e + 1]
        if uL <= uR:
            lo = uL
            hi = uR
        else:
            lo = uR
            hi = uL
        if ratio * max(abs(lo), abs(hi)) > k + CFL_SLACK:
            raise ValueError("CFL violation: ratio*|u| exceeds k at an interface")
        d = uR - uL
        if d == 0.0:
            for i in range(k):
                P[e, i] = 0.0
                M[e, i] = 0.0
            continue
        flo = 0.5 * lo * lo
        fhi = 0.5 * hi * hi
        is_min = uL < uR
        for mm in range(-k, k + 1):
            s = mm * rdx
            wlo = flo - s * lo
            whi = fhi - s * hi
            if is_min:
                e_val = min(wlo, whi)
                if lo < s and s < hi:
                    e_val = min(e_val, -0.5 * s * s)
            else:
                e_val = max(wlo, whi)
            E[mm + k] = e_val
        for i in range(k):
            P[e, i] = (E[i + 1 + k] - E[i + k]) + rdx * uR
            M[e, i] = (E[k - i] - E[k - (i + 1)]) + rdx * uL
        # jump-scaled TVD residuals: each inequality times |jump|, which stays
        # well conditioned where the plain viscosity form would divide by a
        # near-zero jump
        fL = 0.5 * uL * uL
        fR = 0.5 * uR * uR
        sigma = 1.0 if d > 0.0 else -1.0
        cd = ratio * (fR - fL)
        q0d = ratio * ((fL + fR) - 2.0 * E[k])
        for idx in range(k + 2):
            qp[idx] = 0.0
            qm[idx] = 0.0
        for i in range(1, k):
            qp[i] = (ratio * fL + i * uL) - ratio * E[k - i]
            qm[i] = (ratio * fR - i * uR) - ratio * E[k + i]
        r = sigma * (((d - q0d) + qm[1]) + qp[1])
        if r < worst:
            worst = r
        r = sigma * (((q0d - 4.0 * qp[1]) + 2.0 * qp[2]) - cd)
        if r < worst:
            worst = r
        r = sigma * (((q0d - 4.0 * qm[1]) + 2.0 * qm[2]) + cd)
        if r < worst:
            worst = r
        for i in range(1, k):
            r = sigma * ((qp[i] - 2.0 * qp[i + 1]) + qp[i + 2])
            if r < worst:
                worst = r
            r = sigma * ((qm[i] - 2.0 * qm[i + 1]) + qm[i + 2])
            if r < worst:
                worst = r
    u_new = np.empty(n)
    for j in range(n):
        s = 0.0
        for i in range(k):
            s += P[j + k - 1 - i, i] + M[j + k + i, i]
        u_new[j] = u_ext[j + k] - ratio * s
    return u_new, worst


@njit(cache=True)
def euler_courant_step(w_ext, gamma, ratio, k, scheme, beta, delta):
    ntot = w_ext.shape[0]
    n = ntot - 2 * k
    m = ntot - 1
    rdx = 1.0 / ratio
    u = np.empty(ntot)
    p = np.empty(ntot)
    h = np.empty(ntot)
    sq = np.empty(ntot)
    for c in range(ntot):
        rho = w_ext[c, 0]
        if rho <= 0.0:
            raise ValueError("nonpositive density in the extended field")
        mom = w_ext[c, 1]
        ene = w_ext[c, 2]
        uc = mom / rho
        pc = (gamma - 1.0) * (ene - 0.5 * mom * uc)
        if pc <= 0.0:
            raise ValueError("nonpositive pressure in the extended field")
        u[c] = uc
        p[c] = pc
        h[c] = (ene + pc) / rho
        sq[c] = np.sqrt(rho)
    P = np.zeros((m, k, 3))
    M = np.zeros((m, k, 3))
    qp = np.zeros(k + 2)
    qm = np.zeros(k + 2)
    ap = np.empty(k)
    am = np.empty(k)
    worst = np.inf
    for e in range(m):
        sql = sq[e]
        sqr = sq[e + 1]
        inv = 1.0 / (sql + sqr)
        ut = (sql * u[e] + sqr * u[e + 1]) * inv
        ht = (sql * h[e] + sqr * h[e + 1]) * inv
        a2 = (gamma - 1.0) * (ht - 0.5 * ut * ut)
        if a2 <= 0.0:
            raise ValueError("vacuum-adjacent interface: averaged sound speed lost")
        at = np.sqrt(a2)
        d0 = w_ext[e + 1, 0] - w_ext[e, 0]
        d1 = w_ext[e + 1, 1] - w_ext[e, 1]
        d2 = w_ext[e + 1, 2] - w_ext[e, 2]
        alpha1 = (gamma - 1.0) / a2 * ((ht - ut * ut) * d0 + ut * d1 - d2)
        alpha0 = ((d0 * (ut + at) - d1) - at * alpha1) / (2.0 * at)
        alpha2 = d0 - (alpha0 + alpha1)
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
            if abs(C) > k + CFL_SLACK:
                raise ValueError("CFL violation: ratio*|eigenvalue| exceeds k")
            q0 = _q_fill(C, k, scheme, beta, delta, qp, qm)
            _a_fill(C, q0, qp, qm, rdx, k, ap, am)
            r = _resid_min(C, q0, qp, qm, k)
            if r < worst:
                worst = r
            w0 = alpha * 1.0
            w1 = alpha * r1
            w2 = alpha * r2
            for i in range(k):
                P[e, i, 0] += ap[i] * w0
                P[e, i, 1] += ap[i] * w1
                P[e, i, 2] += ap[i] * w2
                M[e, i, 0] += am[i] * w0
                M[e, i, 1] += am[i] * w1
                M[e, i, 2] += am[i] * w2
    w_new = np.empty((n, 3))
    for j in range(n):
        for c in range(3):
            s = 0.0
            for i in range(k):
                s += P[j + k - 1 - i, i, c] + M[j + k + i, i, c]
            w_new[j, c] = w_ext[j + k, c] - ratio * s
    return w_new, worst
