"""Vectorized numpy implementation of the pencil sweep kernel."""

from __future__ import annotations

import math

import numpy as np

_FALLBACK, _DSUB, _COMPWISE = 5, 6, 7
_SERIES = 15
_NODES = np.arange(-3.0, 3.0)
# sum_j z^j / (2j+6)!  and  sum_j z^j / (2j+7)!
_C4 = np.array([1.0 / math.factorial(2 * j + 6) for j in range(_SERIES)])
_C5 = np.array([1.0 / math.factorial(2 * j + 7) for j in range(_SERIES)])
_CLASSICAL_D = np.array([0.1, 0.6, 0.3])


def _horner(coef: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coef[-1])
    for c in coef[-2::-1]:
        acc = acc * z + c
    return acc


def exponential_weights(s2, kind, dx, cfg, reduced):
    """Optimal weights from the block-reduced 6x6 system; returns (d, ok)."""
    s2 = np.asarray(s2, dtype=float)
    t = _NODES
    z = s2[..., None] * t * t
    r4 = t**4 * z * _horner(_C4, z)
    r5 = t**5 * z * _horner(_C5, z)
    c2 = np.asarray(kind) >= 3
    r5 = r5 + np.where(c2, s2 / dx, 0.0)[..., None] * (t**6 / 720.0)
    w0, n4, n5 = reduced
    g4, g5 = r4 @ w0, r5 @ w0
    a11, a12 = 1.0 + r4 @ n4, r4 @ n5
    a21, a22 = r5 @ n4, 1.0 + r5 @ n5
    det = a11 * a22 - a12 * a21
    size = (np.abs(a11) + np.abs(a12)) * (np.abs(a21) + np.abs(a22))
    ok = np.abs(det) > 1.0e-12 * size
    det = np.where(ok, det, 1.0)
    b = (-g4 * a22 + g5 * a12) / det
    c = (-g5 * a11 + g4 * a21) / det
    w_0 = w0[0] + b * n4[0] + c * n5[0]
    w_1 = w0[1] + b * n4[1] + c * n5[1]
    C0 = -w_0
    C1 = -w_0 - w_1
    d0 = 3.0 * C0
    d1 = -6.0 * C1 - 7.0 * d0
    d = np.stack([d0, d1, 1.0 - d0 - d1], axis=-1)
    return d, ok


def reconstruct(V: np.ndarray, cfg, reduced, counters: np.ndarray) -> np.ndarray:
    """Reconstruct at x_{j+1/2} for every window along the last axis (length 6)."""
    v0, v1, v2, v3, v4, v5 = (V[..., i] for i in range(6))
    fl = np.stack(
        [
            (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0,
            (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0,
            (2.0 * v2 + 5.0 * v3 - v4) / 6.0,
        ],
        axis=-1,
    )
    if cfg.scheme == 3:
        d = _optimal_weights_h(V, cfg, reduced, counters)
        id1 = np.stack([v0 - 3.0 * v1 + 2.0 * v2, v3 - v2, v3 - v2], axis=-1)
        id2 = np.stack([v0 - 2.0 * v1 + v2, v1 - 2.0 * v2 + v3, v2 - 2.0 * v3 + v4], axis=-1)
        beta = cfg.theta * np.abs(id1) + np.abs(id2)
        tau = (v0 - 4.0 * v1 + 6.0 * v2 - 4.0 * v3 + v4)[..., None]
        alpha = d * (1.0 + tau * tau / (beta * beta + cfg.eps_h))
    else:
        c = 13.0 / 12.0
        beta = np.stack(
            [
                c * (v0 - 2 * v1 + v2) ** 2 + 0.25 * (v0 - 4 * v1 + 3 * v2) ** 2,
                c * (v1 - 2 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2,
                c * (v2 - 2 * v3 + v4) ** 2 + 0.25 * (3 * v2 - 4 * v3 + v4) ** 2,
            ],
            axis=-1,
        )
        d = _CLASSICAL_D
        eps = cfg.eps_base
        if cfg.scheme == 2:
            tau_z = np.abs(beta[..., 0] - beta[..., 2])[..., None]
            alpha = d * (1.0 + tau_z / (beta + eps))
        else:
            alpha = d / ((eps + beta) * (eps + beta))
            if cfg.scheme == 1:
                om = alpha / alpha.sum(axis=-1, keepdims=True)
                alpha = om * (d + d * d - 3.0 * d * om + om * om) / (d * d + om * (1.0 - 2.0 * d))
    omega = alpha / alpha.sum(axis=-1, keepdims=True)
    return (omega * fl).sum(axis=-1)


def _optimal_weights_h(V, cfg, reduced, counters):
    v0, v1, v2, v3, v4, v5 = (V[..., i] for i in range(6))
    D4 = v4 - 3.0 * v3 + 3.0 * v2 - v1
    D5 = v4 - 4.0 * v3 + 6.0 * v2 - 4.0 * v1 + v0
    D6 = v5 - 5.0 * v4 + 10.0 * v3 - 10.0 * v2 + 5.0 * v1 - v0
    tol = cfg.eps_zero * (np.abs(V).max(axis=-1) + 1.0)
    finite = np.isfinite(D4) & np.isfinite(D5) & np.isfinite(D6) & np.isfinite(tol)
    nz6 = finite & (np.abs(D6) > tol)
    c1 = nz6 & (np.abs(D4) > tol)
    c2 = nz6 & ~c1 & (np.abs(D5) > tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        s2 = np.where(c1, D6 / np.where(c1, D4, 1.0), np.where(c2, cfg.dx * D6 / np.where(c2, D5, 1.0), 0.0))
    s2 = np.minimum(s2, cfg.s2_max)
    s2 = np.maximum(s2, max(-cfg.s2_max, cfg.s2_trig_min))
    pos = s2 > 0.0
    kind = np.where(c1, np.where(pos, 1, 2), np.where(c2, np.where(pos, 3, 4), 0))

    d = np.broadcast_to(_CLASSICAL_D, V.shape[:-1] + (3,)).copy()
    expo = kind > 0
    if np.any(expo):
        de, ok = exponential_weights(s2[expo], kind[expo], cfg.dx, cfg, reduced)
        bad = ~ok
        sub = ok & (np.any(de < cfg.d_min, axis=-1) | np.any(de > 1.0 - cfg.d_min, axis=-1))
        de[bad | sub] = _CLASSICAL_D
        d[expo] = de
        counters[_FALLBACK] += int(bad.sum())
        counters[_DSUB] += int(sub.sum())
        kinds_ok = kind[expo][ok]
    else:
        kinds_ok = np.zeros(0, dtype=int)
    counters[0] += int((~expo).sum())
    counters[1:5] += np.bincount(kinds_ok, minlength=5)[1:5]
    return d


# {{{ characteristic projection


def eigenvectors(qa: np.ndarray, qb: np.ndarray, gamma: float, model: int):
    """Roe-averaged left/right eigenvector matrices, ``(..., m, m)`` each.

    Returns ``(L, R, ok)``; where the Roe and arithmetic averages both give
    ``c**2 <= 0``, ``ok`` is False and the identity is substituted.
    """
    m = qa.shape[-1]
    rl, rr = qa[..., 0], qb[..., 0]
    with np.errstate(invalid="ignore", divide="ignore"):
        ul, ur = qa[..., 1] / rl, qb[..., 1] / rr
        if m == 4:
            vl, vr = qa[..., 2] / rl, qb[..., 2] / rr
        else:
            vl = vr = np.zeros_like(ul)
        kl = 0.5 * (ul * ul + vl * vl)
        kr = 0.5 * (ur * ur + vr * vr)
        Hl = (qa[..., m - 1] + (gamma - 1.0) * (qa[..., m - 1] - rl * kl)) / rl
        Hr = (qb[..., m - 1] + (gamma - 1.0) * (qb[..., m - 1] - rr * kr)) / rr
        sl, sr = np.sqrt(rl), np.sqrt(rr)
        wsum = sl + sr
        u = (sl * ul + sr * ur) / wsum
        v = (sl * vl + sr * vr) / wsum
        H = (sl * Hl + sr * Hr) / wsum
        c2 = (gamma - 1.0) * (H - 0.5 * (u * u + v * v))
        roe_ok = np.isfinite(c2) & (c2 > 0.0)
        ua, va, Ha = 0.5 * (ul + ur), 0.5 * (vl + vr), 0.5 * (Hl + Hr)
        c2a = (gamma - 1.0) * (Ha - 0.5 * (ua * ua + va * va))
        u = np.where(roe_ok, u, ua)
        v = np.where(roe_ok, v, va)
        H = np.where(roe_ok, H, Ha)
        c2 = np.where(roe_ok, c2, c2a)
    ok = np.isfinite(c2) & (c2 > 0.0)
    c2 = np.where(ok, c2, 1.0)
    u = np.where(ok, u, 0.0)
    v = np.where(ok, v, 0.0)
    H = np.where(ok, H, 1.0)
    L, R = eigen_matrices(u, v, H, c2, gamma, m)
    if not np.all(ok):
        eye = np.eye(m)
        L[~ok] = eye
        R[~ok] = eye
    return L, R, ok


def eigen_matrices(u, v, H, c2, gamma, m):
    c = np.sqrt(c2)
    q2 = u * u + v * v
    b1 = (gamma - 1.0) / c2
    b2 = 0.5 * q2 * b1
    shape = np.shape(u) + (m, m)
    L = np.zeros(shape)
    R = np.zeros(shape)
    one = np.ones_like(u)
    if m == 3:
        R[..., 0, :] = np.stack([one, one, one], axis=-1)
        R[..., 1, :] = np.stack([u - c, u, u + c], axis=-1)
        R[..., 2, :] = np.stack([H - u * c, 0.5 * q2, H + u * c], axis=-1)
        L[..., 0, :] = np.stack([0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1], axis=-1)
        L[..., 1, :] = np.stack([1.0 - b2, b1 * u, -b1], axis=-1)
        L[..., 2, :] = np.stack([0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1], axis=-1)
        return L, R
    zero = np.zeros_like(u)
    R[..., 0, :] = np.stack([one, one, zero, one], axis=-1)
    R[..., 1, :] = np.stack([u - c, u, zero, u + c], axis=-1)
    R[..., 2, :] = np.stack([v, v, one, v], axis=-1)
    R[..., 3, :] = np.stack([H - u * c, 0.5 * q2, v, H + u * c], axis=-1)
    L[..., 0, :] = np.stack([0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1], axis=-1)
    L[..., 1, :] = np.stack([1.0 - b2, b1 * u, b1 * v, -b1], axis=-1)
    L[..., 2, :] = np.stack([-v, zero, one, zero], axis=-1)
    L[..., 3, :] = np.stack([0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1], axis=-1)
    return L, R


# }}}


def sweep(q, f, alpha, model, gamma, cfg, ghost, counters, reduced):
    P, n_pad, m = q.shape
    n = n_pad - 2 * ghost
    left = np.arange(ghost - 1, ghost + n)
    idx = left[:, None] + np.arange(-2, 4)[None, :]
    qw = q[:, idx, :]
    fw = f[:, idx, :]
    if model == 0:
        cq, cf = qw, fw
    else:
        L, R, ok = eigenvectors(q[:, left, :], q[:, left + 1, :], gamma, model)
        counters[_COMPWISE] += int((~ok).sum())
        cq = np.einsum("pikl,pijl->pijk", L, qw)
        cf = np.einsum("pikl,pijl->pijk", L, fw)
    # (P, n+1, m, 6) with the window on the last axis
    cq = np.moveaxis(cq, 2, 3)
    cf = np.moveaxis(cf, 2, 3)
    a = alpha[:, None]
    fplus = 0.5 * (cf + a * cq)
    fminus = 0.5 * (cf - a * cq)[..., ::-1]
    hchar = reconstruct(fplus, cfg, reduced, counters) + reconstruct(fminus, cfg, reduced, counters)
    if model == 0:
        return hchar
    return np.einsum("pikl,pil->pik", R, hchar)
