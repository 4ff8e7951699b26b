"""Exact solution of the 1D Riemann problem for an ideal gas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class VacuumError(ValueError):
    """Initial data generate a vacuum; the exact solver does not handle it."""


@dataclass(frozen=True)
class GasState:
    rho: float
    u: float
    p: float

    def sound_speed(self, gamma: float) -> float:
        return math.sqrt(gamma * self.p / self.rho)


@dataclass(frozen=True)
class StarRegion:
    p: float
    u: float
    rho_left: float
    rho_right: float
    iterations: int
    residual: float


def _as_state(s) -> GasState:
    if isinstance(s, GasState):
        out = s
    else:
        rho, u, p = (float(v) for v in s)
        out = GasState(rho, u, p)
    if not (out.rho > 0.0 and out.p > 0.0 and math.isfinite(out.u)):
        raise ValueError(f"non-physical Riemann state {out}")
    return out


def _pressure_function(p: float, s: GasState, gamma: float) -> tuple[float, float]:
    """Toro's f_K(p) and its derivative."""
    if p > s.p:
        A = 2.0 / ((gamma + 1.0) * s.rho)
        B = (gamma - 1.0) / (gamma + 1.0) * s.p
        root = math.sqrt(A / (p + B))
        return (p - s.p) * root, root * (1.0 - 0.5 * (p - s.p) / (p + B))
    c = s.sound_speed(gamma)
    ratio = p / s.p
    e = (gamma - 1.0) / (2.0 * gamma)
    return 2.0 * c / (gamma - 1.0) * (ratio**e - 1.0), ratio ** (-(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c)


def star_region(left, right, gamma: float = 1.4, tol: float = 1.0e-12, max_iter: int = 200) -> StarRegion:
    """Pressure and velocity between the nonlinear waves.

    The root of ``f_L(p) + f_R(p) + u_R - u_L`` is bracketed, narrowed by a
    few bisections and finished by safeguarded Newton until the residual is
    below ``tol``.
    """
    L, R = _as_state(left), _as_state(right)
    cl, cr = L.sound_speed(gamma), R.sound_speed(gamma)
    du = R.u - L.u
    if 2.0 * (cl + cr) / (gamma - 1.0) <= du:
        raise VacuumError("initial data generate vacuum")

    def g(p):
        fl, dl = _pressure_function(p, L, gamma)
        fr, dr = _pressure_function(p, R, gamma)
        return fl + fr + du, dl + dr

    lo, hi = 0.0, max(L.p, R.p)
    while g(hi)[0] < 0.0:
        lo, hi = hi, 2.0 * hi
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        if g(mid)[0] < 0.0:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    res, deriv = g(p)
    it = 0
    while abs(res) >= tol and it < max_iter:
        it += 1
        if res < 0.0:
            lo = p
        else:
            hi = p
        step = p - res / deriv
        p = step if lo < step < hi else 0.5 * (lo + hi)
        res, deriv = g(p)
        if hi - lo <= 4.0 * np.finfo(float).eps * hi:
            break
    if abs(res) >= tol and abs(res) > 1.0e3 * np.finfo(float).eps * (cl + cr + abs(du)):
        raise ArithmeticError(f"star pressure did not converge (residual {res:.3e})")

    fl = _pressure_function(p, L, gamma)[0]
    fr = _pressure_function(p, R, gamma)[0]
    u = 0.5 * (L.u + R.u) + 0.5 * (fr - fl)
    return StarRegion(p, u, _star_density(p, L, gamma), _star_density(p, R, gamma), it, abs(res))


def _star_density(p: float, s: GasState, gamma: float) -> float:
    if p > s.p:
        r = p / s.p
        gm = (gamma - 1.0) / (gamma + 1.0)
        return s.rho * (r + gm) / (gm * r + 1.0)
    return s.rho * (p / s.p) ** (1.0 / gamma)


def exact_riemann(left, right, gamma: float, xi) -> np.ndarray:
    """Primitive ``(rho, u, p)`` at similarity coordinates ``xi = (x - x0) / t``."""
    L, R = _as_state(left), _as_state(right)
    star = star_region(L, R, gamma)
    xi = np.asarray(xi, dtype=float)
    out = np.empty(xi.shape + (3,))
    left_side = xi <= star.u
    for side, s, sign, rho_star in ((left_side, L, -1.0, star.rho_left), (~left_side, R, 1.0, star.rho_right)):
        x = xi[side]
        out[side] = _sample_side(x, s, star.p, star.u, rho_star, sign, gamma)
    return out


def _sample_side(xi, s: GasState, p_star, u_star, rho_star, sign, gamma) -> np.ndarray:
    """Sample one side of the contact; ``sign`` is -1 for the left wave, +1 for the right."""
    c = s.sound_speed(gamma)
    res = np.empty(xi.shape + (3,))
    res[:] = (rho_star, u_star, p_star)
    gp, gm = gamma + 1.0, gamma - 1.0
    if p_star > s.p:
        speed = s.u + sign * c * math.sqrt(gp / (2.0 * gamma) * p_star / s.p + gm / (2.0 * gamma))
        res[sign * xi > sign * speed] = (s.rho, s.u, s.p)
        return res
    c_star = c * (p_star / s.p) ** (gm / (2.0 * gamma))
    head = s.u + sign * c
    tail = u_star + sign * c_star
    res[sign * xi >= sign * head] = (s.rho, s.u, s.p)
    fan = (sign * xi < sign * head) & (sign * xi > sign * tail)
    if np.any(fan):
        x = xi[fan]
        base = 2.0 / gp - sign * gm / (gp * c) * (s.u - x)
        u = 2.0 / gp * (-sign * c + 0.5 * gm * s.u + x)
        res[fan] = np.stack(
            [s.rho * base ** (2.0 / gm), u, s.p * base ** (2.0 * gamma / gm)], axis=-1
        )
    return res
