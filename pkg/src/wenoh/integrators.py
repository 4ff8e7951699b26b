"""Explicit Runge-Kutta steppers and time-step laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

Rhs = Callable[[np.ndarray, float], np.ndarray]


class SolverDiverged(ArithmeticError):
    """A stage produced non-finite values."""


def _guard(u: np.ndarray, stage: str, t: float) -> np.ndarray:
    if not np.all(np.isfinite(u)):
        raise SolverDiverged(f"non-finite state after {stage} at t={t:.6g}")
    return u


def tvd_rk3_step(u: np.ndarray, t: float, dt: float, rhs: Rhs) -> np.ndarray:
    """Third-order strong-stability-preserving Runge-Kutta step."""
    u1 = _guard(u + dt * rhs(u, t), "stage 1", t)
    u2 = _guard(0.75 * u + 0.25 * (u1 + dt * rhs(u1, t + dt)), "stage 2", t)
    return _guard((u + 2.0 * (u2 + dt * rhs(u2, t + 0.5 * dt))) / 3.0, "stage 3", t)


def rk4_step(u: np.ndarray, t: float, dt: float, rhs: Rhs) -> np.ndarray:
    """Classical four-stage Runge-Kutta step."""
    k1 = rhs(u, t)
    k2 = rhs(_guard(u + 0.5 * dt * k1, "stage 1", t), t + 0.5 * dt)
    k3 = rhs(_guard(u + 0.5 * dt * k2, "stage 2", t), t + 0.5 * dt)
    k4 = rhs(_guard(u + dt * k3, "stage 3", t), t + dt)
    return _guard(u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), "stage 4", t)


STEPPERS = {"rk3": tvd_rk3_step, "rk4": rk4_step}


@dataclass(frozen=True)
class CFL:
    number: float = 0.5

    def __post_init__(self) -> None:
        if not self.number > 0.0:
            raise ValueError("CFL number must be positive")


@dataclass(frozen=True)
class FixedPower:
    """dt = dx**power, shrunk uniformly so an integer step count lands on t_final."""

    power: float = 1.5

    def steps(self, dx: float, t_final: float) -> int:
        return max(1, math.ceil(t_final / dx**self.power - 1.0e-9))


TimeStepLaw = CFL | FixedPower


def compute_dt(
    speeds: tuple[float, ...], spacing: tuple[float, ...], law: TimeStepLaw, t: float, t_final: float
) -> float:
    """Next step size; ``speeds`` are the per-direction maximum wave speeds."""
    remaining = t_final - t
    if isinstance(law, FixedPower):
        dt = t_final / law.steps(spacing[0], t_final)
    else:
        rate = sum(a / h for a, h in zip(speeds, spacing))
        dt = law.number / rate if rate > 0.0 else remaining
    if dt >= remaining:
        return remaining
    return dt
