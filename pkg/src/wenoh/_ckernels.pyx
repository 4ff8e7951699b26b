# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pencil sweep: characteristic projection, splitting and WENO reconstruction.

Mirrors ``wenoh._kernels_py`` formula for formula.
"""

import numpy as np

from cython.parallel cimport prange
from libc.math cimport fabs, sqrt, isfinite

DEF NSERIES = 15
DEF NC = 8

cdef struct Params:
    int scheme
    double theta
    double eps_h
    double eps_base
    double eps_zero
    double s2_max
    double s2_low
    double d_min
    double dx
    double w0[6]
    double n4[6]
    double n5[6]

cdef double S4C[NSERIES]
cdef double S5C[NSERIES]


cdef void _init_series():
    cdef int j, k
    cdef double fact
    for j in range(NSERIES):
        fact = 1.0
        for k in range(2, 2 * j + 7):
            fact *= k
        S4C[j] = 1.0 / fact
        S5C[j] = 1.0 / (fact * (2 * j + 7))

_init_series()


cdef inline double _horner(const double* c, double z) noexcept nogil:
    cdef double acc = c[NSERIES - 1]
    cdef int j
    for j in range(NSERIES - 2, -1, -1):
        acc = acc * z + c[j]
    return acc


cdef inline int _exp_weights(double s2, int kind, const Params* p, double* d) noexcept nogil:
    """Optimal weights from the block-reduced system; 0 on success, 1 if singular."""
    cdef double r4[6]
    cdef double r5[6]
    cdef double z1 = s2, z2 = 4.0 * s2, z3 = 9.0 * s2
    cdef double a1 = s2 * _horner(S4C, z1), b1 = s2 * _horner(S5C, z1)
    cdef double a2 = 64.0 * s2 * _horner(S4C, z2), b2 = 128.0 * s2 * _horner(S5C, z2)
    cdef double a3 = 729.0 * s2 * _horner(S4C, z3), b3 = 2187.0 * s2 * _horner(S5C, z3)
    cdef double corr, g4, g5, a11, a12, a21, a22, det, size, bb, cc, w_0, w_1, C0, C1
    cdef int n
    # nodes t = -3, -2, -1, 0, 1, 2
    r4[0] = a3
    r4[1] = a2
    r4[2] = a1
    r4[3] = 0.0
    r4[4] = a1
    r4[5] = a2
    r5[0] = -b3
    r5[1] = -b2
    r5[2] = -b1
    r5[3] = 0.0
    r5[4] = b1
    r5[5] = b2
    if kind >= 3:
        corr = (s2 / p.dx) / 720.0
        r5[0] += corr * 729.0
        r5[1] += corr * 64.0
        r5[2] += corr
        r5[4] += corr
        r5[5] += corr * 64.0
    g4 = 0.0
    g5 = 0.0
    a11 = 1.0
    a12 = 0.0
    a21 = 0.0
    a22 = 1.0
    for n in range(6):
        g4 += p.w0[n] * r4[n]
        g5 += p.w0[n] * r5[n]
        a11 += p.n4[n] * r4[n]
        a12 += p.n5[n] * r4[n]
        a21 += p.n4[n] * r5[n]
        a22 += p.n5[n] * r5[n]
    det = a11 * a22 - a12 * a21
    size = (fabs(a11) + fabs(a12)) * (fabs(a21) + fabs(a22))
    if not fabs(det) > 1.0e-12 * size:
        return 1
    bb = (-g4 * a22 + g5 * a12) / det
    cc = (-g5 * a11 + g4 * a21) / det
    w_0 = p.w0[0] + bb * p.n4[0] + cc * p.n5[0]
    w_1 = p.w0[1] + bb * p.n4[1] + cc * p.n5[1]
    C0 = -w_0
    C1 = -w_0 - w_1
    d[0] = 3.0 * C0
    d[1] = -6.0 * C1 - 7.0 * d[0]
    d[2] = 1.0 - d[0] - d[1]
    return 0


cdef inline void _classical(double* d) noexcept nogil:
    d[0] = 0.1
    d[1] = 0.6
    d[2] = 0.3


cdef inline void _optimal_h(const double* v, const Params* p, double* d, long* cnt) noexcept nogil:
    cdef double D4 = v[4] - 3.0 * v[3] + 3.0 * v[2] - v[1]
    cdef double D5 = v[4] - 4.0 * v[3] + 6.0 * v[2] - 4.0 * v[1] + v[0]
    cdef double D6 = v[5] - 5.0 * v[4] + 10.0 * v[3] - 10.0 * v[2] + 5.0 * v[1] - v[0]
    cdef double scale = 0.0, tol, s2
    cdef int j, kind
    for j in range(6):
        if fabs(v[j]) > scale:
            scale = fabs(v[j])
    tol = p.eps_zero * (scale + 1.0)
    kind = 0
    s2 = 0.0
    if isfinite(D4) and isfinite(D5) and isfinite(D6) and isfinite(tol) and fabs(D6) > tol:
        if fabs(D4) > tol:
            s2 = D6 / D4
            kind = 1
        elif fabs(D5) > tol:
            s2 = p.dx * D6 / D5
            kind = 3
    if kind == 0:
        cnt[0] += 1
        _classical(d)
        return
    if s2 > p.s2_max:
        s2 = p.s2_max
    if s2 < p.s2_low:
        s2 = p.s2_low
    if s2 < 0.0:
        kind += 1
    if _exp_weights(s2, kind, p, d) != 0:
        cnt[5] += 1
        _classical(d)
        return
    cnt[kind] += 1
    if (d[0] < p.d_min or d[1] < p.d_min or d[2] < p.d_min
            or d[0] > 1.0 - p.d_min or d[1] > 1.0 - p.d_min or d[2] > 1.0 - p.d_min):
        cnt[6] += 1
        _classical(d)


cdef inline double _rec(const double* v, const Params* p, long* cnt) noexcept nogil:
    cdef double fl0 = (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0
    cdef double fl1 = (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0
    cdef double fl2 = (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0
    cdef double d[3]
    cdef double b0, b1, b2, t0, t1, tau, a0, a1, a2, s, o0, o1, o2, eps, tz
    cdef double c = 13.0 / 12.0
    if p.scheme == 3:
        _optimal_h(v, p, d, cnt)
        t0 = v[3] - v[2]
        b0 = p.theta * fabs(v[0] - 3.0 * v[1] + 2.0 * v[2]) + fabs(v[0] - 2.0 * v[1] + v[2])
        b1 = p.theta * fabs(t0) + fabs(v[1] - 2.0 * v[2] + v[3])
        b2 = p.theta * fabs(t0) + fabs(v[2] - 2.0 * v[3] + v[4])
        tau = v[0] - 4.0 * v[1] + 6.0 * v[2] - 4.0 * v[3] + v[4]
        tau = tau * tau
        a0 = d[0] * (1.0 + tau / (b0 * b0 + p.eps_h))
        a1 = d[1] * (1.0 + tau / (b1 * b1 + p.eps_h))
        a2 = d[2] * (1.0 + tau / (b2 * b2 + p.eps_h))
    else:
        t0 = v[0] - 2.0 * v[1] + v[2]
        t1 = v[0] - 4.0 * v[1] + 3.0 * v[2]
        b0 = c * t0 * t0 + 0.25 * t1 * t1
        t0 = v[1] - 2.0 * v[2] + v[3]
        t1 = v[1] - v[3]
        b1 = c * t0 * t0 + 0.25 * t1 * t1
        t0 = v[2] - 2.0 * v[3] + v[4]
        t1 = 3.0 * v[2] - 4.0 * v[3] + v[4]
        b2 = c * t0 * t0 + 0.25 * t1 * t1
        eps = p.eps_base
        if p.scheme == 2:
            tz = fabs(b0 - b2)
            a0 = 0.1 * (1.0 + tz / (b0 + eps))
            a1 = 0.6 * (1.0 + tz / (b1 + eps))
            a2 = 0.3 * (1.0 + tz / (b2 + eps))
        else:
            a0 = 0.1 / ((eps + b0) * (eps + b0))
            a1 = 0.6 / ((eps + b1) * (eps + b1))
            a2 = 0.3 / ((eps + b2) * (eps + b2))
            if p.scheme == 1:
                s = a0 + a1 + a2
                o0 = a0 / s
                o1 = a1 / s
                o2 = a2 / s
                a0 = o0 * (0.1 + 0.01 - 0.3 * o0 + o0 * o0) / (0.01 + o0 * (1.0 - 0.2))
                a1 = o1 * (0.6 + 0.36 - 1.8 * o1 + o1 * o1) / (0.36 + o1 * (1.0 - 1.2))
                a2 = o2 * (0.3 + 0.09 - 0.9 * o2 + o2 * o2) / (0.09 + o2 * (1.0 - 0.6))
    s = a0 + a1 + a2
    return (a0 / s) * fl0 + (a1 / s) * fl1 + (a2 / s) * fl2


cdef inline int _eigen(const double* qa, const double* qb, int m, double gamma,
                       double* L, double* R) noexcept nogil:
    """Roe-averaged eigenvectors (row-major m x m); returns 0 if identity was used."""
    cdef double rl = qa[0], rr = qb[0]
    cdef double ul = qa[1] / rl, ur = qb[1] / rr
    cdef double vl = 0.0, vr = 0.0
    cdef double kl, kr, Hl, Hr, sl, sr, ws, u, v, H, c2, c, q2, b1, b2
    cdef int i
    if m == 4:
        vl = qa[2] / rl
        vr = qb[2] / rr
    kl = 0.5 * (ul * ul + vl * vl)
    kr = 0.5 * (ur * ur + vr * vr)
    Hl = (qa[m - 1] + (gamma - 1.0) * (qa[m - 1] - rl * kl)) / rl
    Hr = (qb[m - 1] + (gamma - 1.0) * (qb[m - 1] - rr * kr)) / rr
    sl = sqrt(rl)
    sr = sqrt(rr)
    ws = sl + sr
    u = (sl * ul + sr * ur) / ws
    v = (sl * vl + sr * vr) / ws
    H = (sl * Hl + sr * Hr) / ws
    c2 = (gamma - 1.0) * (H - 0.5 * (u * u + v * v))
    if not (isfinite(c2) and c2 > 0.0):
        u = 0.5 * (ul + ur)
        v = 0.5 * (vl + vr)
        H = 0.5 * (Hl + Hr)
        c2 = (gamma - 1.0) * (H - 0.5 * (u * u + v * v))
    if not (isfinite(c2) and c2 > 0.0):
        for i in range(m * m):
            L[i] = 0.0
            R[i] = 0.0
        for i in range(m):
            L[i * m + i] = 1.0
            R[i * m + i] = 1.0
        return 0
    c = sqrt(c2)
    q2 = u * u + v * v
    b1 = (gamma - 1.0) / c2
    b2 = 0.5 * q2 * b1
    if m == 3:
        R[0] = 1.0; R[1] = 1.0; R[2] = 1.0
        R[3] = u - c; R[4] = u; R[5] = u + c
        R[6] = H - u * c; R[7] = 0.5 * q2; R[8] = H + u * c
        L[0] = 0.5 * (b2 + u / c); L[1] = -0.5 * (b1 * u + 1.0 / c); L[2] = 0.5 * b1
        L[3] = 1.0 - b2; L[4] = b1 * u; L[5] = -b1
        L[6] = 0.5 * (b2 - u / c); L[7] = -0.5 * (b1 * u - 1.0 / c); L[8] = 0.5 * b1
        return 1
    R[0] = 1.0; R[1] = 1.0; R[2] = 0.0; R[3] = 1.0
    R[4] = u - c; R[5] = u; R[6] = 0.0; R[7] = u + c
    R[8] = v; R[9] = v; R[10] = 1.0; R[11] = v
    R[12] = H - u * c; R[13] = 0.5 * q2; R[14] = v; R[15] = H + u * c
    L[0] = 0.5 * (b2 + u / c); L[1] = -0.5 * (b1 * u + 1.0 / c); L[2] = -0.5 * b1 * v; L[3] = 0.5 * b1
    L[4] = 1.0 - b2; L[5] = b1 * u; L[6] = b1 * v; L[7] = -b1
    L[8] = -v; L[9] = 0.0; L[10] = 1.0; L[11] = 0.0
    L[12] = 0.5 * (b2 - u / c); L[13] = -0.5 * (b1 * u - 1.0 / c); L[14] = -0.5 * b1 * v; L[15] = 0.5 * b1
    return 1


cdef void _pencil(const double* q, const double* f, int n_pad, int m, int g,
                  const double* alpha, int model, double gamma, const Params* p,
                  double* out, long* cnt) noexcept nogil:
    cdef int n = n_pad - 2 * g
    cdef int i, j, k, l, a, base
    cdef double L[16]
    cdef double R[16]
    cdef double cq[24]
    cdef double cf[24]
    cdef double h[4]
    cdef double vp[6]
    cdef double vm[6]
    cdef double sq, sf
    for i in range(n + 1):
        a = g - 1 + i
        base = (a - 2) * m
        if model == 0:
            for j in range(6):
                vp[j] = 0.5 * (f[a - 2 + j] + alpha[0] * q[a - 2 + j])
                vm[j] = 0.5 * (f[a + 3 - j] - alpha[0] * q[a + 3 - j])
            out[i] = _rec(vp, p, cnt) + _rec(vm, p, cnt)
            continue
        if _eigen(q + a * m, q + (a + 1) * m, m, gamma, L, R) == 0:
            cnt[7] += 1
        for j in range(6):
            for k in range(m):
                sq = 0.0
                sf = 0.0
                for l in range(m):
                    sq = sq + L[k * m + l] * q[base + j * m + l]
                    sf = sf + L[k * m + l] * f[base + j * m + l]
                cq[j * m + k] = sq
                cf[j * m + k] = sf
        for k in range(m):
            for j in range(6):
                vp[j] = 0.5 * (cf[j * m + k] + alpha[k] * cq[j * m + k])
                vm[j] = 0.5 * (cf[(5 - j) * m + k] - alpha[k] * cq[(5 - j) * m + k])
            h[k] = _rec(vp, p, cnt) + _rec(vm, p, cnt)
        for l in range(m):
            sq = 0.0
            for k in range(m):
                sq = sq + R[l * m + k] * h[k]
            out[i * m + l] = sq


def sweep(const double[:, :, ::1] q, const double[:, :, ::1] f, const double[::1] alpha,
          int model, double gamma, cfg, int ghost, long[::1] counters,
          const double[:, ::1] reduced, int workers=1):
    """Interface fluxes for a batch of pencils; see ``wenoh.kernels.sweep``."""
    cdef Py_ssize_t P = q.shape[0]
    cdef int n_pad = <int>q.shape[1]
    cdef int m = <int>q.shape[2]
    cdef int n = n_pad - 2 * ghost
    cdef Params par
    cdef Py_ssize_t pp
    cdef int k
    if f.shape[0] != P or f.shape[1] != n_pad or f.shape[2] != m or alpha.shape[0] != m:
        raise ValueError("inconsistent pencil shapes")
    if m > 4 or ghost < 3:
        raise ValueError("unsupported pencil layout")
    par.scheme = cfg.scheme
    par.theta = cfg.theta
    par.eps_h = cfg.eps_h
    par.eps_base = cfg.eps_base
    par.eps_zero = cfg.eps_zero
    par.s2_max = cfg.s2_max
    par.s2_low = max(-cfg.s2_max, cfg.s2_trig_min)
    par.d_min = cfg.d_min
    par.dx = cfg.dx
    for k in range(6):
        par.w0[k] = reduced[0, k]
        par.n4[k] = reduced[1, k]
        par.n5[k] = reduced[2, k]

    result = np.empty((P, n + 1, m))
    cdef double[:, :, ::1] out = result
    per = np.zeros((P, NC), dtype=np.int64)
    cdef long[:, ::1] cnt = per
    if P > 0:
        for pp in prange(P, nogil=True, num_threads=max(1, workers), schedule="static"):
            _pencil(&q[pp, 0, 0], &f[pp, 0, 0], n_pad, m, ghost, &alpha[0], model, gamma,
                    &par, &out[pp, 0, 0], &cnt[pp, 0])
    for k in range(NC):
        counters[k] += per[:, k].sum()
    return result
