"""Smoothness indicators and nonlinear weights (JS, M, Z and the L1-based H weights)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Scheme(enum.IntEnum):
    JS = 0
    M = 1
    Z = 2
    H = 3

    @classmethod
    def parse(cls, name: "str | Scheme") -> "Scheme":
        if isinstance(name, Scheme):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}; expected one of js, m, z, h") from None


@dataclass(frozen=True)
class WeightParams:
    scheme: Scheme = Scheme.H
    theta: float = 0.25
    gamma: float = 4.0
    eps_base: float = 1.0e-6

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        if not 0.0 < self.gamma <= 4.0:
            raise ValueError(f"epsilon exponent must lie in (0, 4], got {self.gamma}")
        if not 0.0 < self.theta <= 1.0:
            raise ValueError(f"theta must lie in (0, 1], got {self.theta}")


def id_operators(window5, k: int) -> tuple[float, float]:
    """Generalized first and second undivided differences on substencil ``k``."""
    f = np.asarray(window5, dtype=float)
    a, b, c = f[k], f[k + 1], f[k + 2]
    id1 = (1 - k) * a + (2 * k - 3) * b + (2 - k) * c
    id2 = a - 2.0 * b + c
    return float(id1), float(id2)


def beta_L1(window5, theta: float) -> np.ndarray:
    out = np.empty(3)
    for k in range(3):
        id1, id2 = id_operators(window5, k)
        out[k] = theta * abs(id1) + abs(id2)
    return out


def beta_JS(window5) -> np.ndarray:
    f0, f1, f2, f3, f4 = (float(v) for v in window5)
    c = 13.0 / 12.0
    return np.array(
        [
            c * (f0 - 2 * f1 + f2) ** 2 + 0.25 * (f0 - 4 * f1 + 3 * f2) ** 2,
            c * (f1 - 2 * f2 + f3) ** 2 + 0.25 * (f1 - f3) ** 2,
            c * (f2 - 2 * f3 + f4) ** 2 + 0.25 * (3 * f2 - 4 * f3 + f4) ** 2,
        ]
    )


def tau5(window5) -> float:
    f0, f1, f2, f3, f4 = (float(v) for v in window5)
    return f0 - 4.0 * f1 + 6.0 * f2 - 4.0 * f3 + f4


def _normalize(alpha: np.ndarray) -> np.ndarray:
    return alpha / alpha.sum()


def weights_H(beta, tau: float, d, dx: float, gamma: float = 4.0) -> np.ndarray:
    eps = dx**gamma
    beta = np.asarray(beta, dtype=float)
    alpha = np.asarray(d, dtype=float) * (1.0 + tau * tau / (beta * beta + eps))
    return _normalize(alpha)


def weights_JS(beta, d, eps: float = 1.0e-6) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    return _normalize(np.asarray(d, dtype=float) / (eps + beta) ** 2)


def henrick_map(omega, d) -> np.ndarray:
    omega = np.asarray(omega, dtype=float)
    d = np.asarray(d, dtype=float)
    return omega * (d + d * d - 3.0 * d * omega + omega * omega) / (d * d + omega * (1.0 - 2.0 * d))


def weights_M(beta, d, eps: float = 1.0e-6) -> np.ndarray:
    return _normalize(henrick_map(weights_JS(beta, d, eps), d))


def weights_Z(beta, d, eps: float = 1.0e-6) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    tau_z = abs(beta[0] - beta[2])
    return _normalize(np.asarray(d, dtype=float) * (1.0 + tau_z / (beta + eps)))
