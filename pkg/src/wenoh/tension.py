"""Data-driven choice of the exponential basis and its tension parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from wenoh.basis import S2_TRIG_MIN, BasisKind


class PrimitiveDifferences(NamedTuple):
    D4: float
    D5: float
    D6: float


@dataclass(frozen=True)
class Thresholds:
    eps_zero: float = 1.0e-10
    s2_max: float = 1.0

    def __post_init__(self) -> None:
        if not self.eps_zero > 0.0:
            raise ValueError("eps_zero must be positive")
        # the kernels' truncated series stay exact to rounding up to |s2| = 4
        if not 0.0 < self.s2_max <= 4.0:
            raise ValueError(f"s2_max must lie in (0, 4], got {self.s2_max}")


@dataclass(frozen=True)
class TensionDecision:
    kind: BasisKind
    s2: float


POLYNOMIAL = TensionDecision(BasisKind.POLYNOMIAL, 0.0)


def primitive_differences(window6) -> PrimitiveDifferences:
    """Undivided 4th/5th/6th differences of the primitive at x_{j+1/2}.

    ``window6`` holds flux values on cells j-2..j+3; a k-th difference of the
    primitive is a (k-1)-th difference of these values.
    """
    f0, f1, f2, f3, f4, f5 = (float(v) for v in window6)
    D4 = f4 - 3.0 * f3 + 3.0 * f2 - f1
    D5 = f4 - 4.0 * f3 + 6.0 * f2 - 4.0 * f1 + f0
    D6 = f5 - 5.0 * f4 + 10.0 * f3 - 10.0 * f2 + 5.0 * f1 - f0
    return PrimitiveDifferences(D4, D5, D6)


def clamp_s2(s2: float, s2_max: float) -> float:
    if s2 > s2_max:
        return s2_max
    return max(s2, -s2_max, S2_TRIG_MIN)


def select_tension(
    diffs: PrimitiveDifferences,
    dx: float,
    thresholds: Thresholds = Thresholds(),
    scale: float = 1.0,
) -> TensionDecision:
    """Pick the basis kind and normalized tension ``s2 = lambda**2 dx**2``.

    ``scale`` makes the zero tests relative; callers pass ``max|f| + 1``
    over the window.  Never raises: bad input falls back to polynomials.
    """
    D4, D5, D6 = diffs
    if not all(math.isfinite(v) for v in (D4, D5, D6, scale)) or not dx > 0.0:
        return POLYNOMIAL
    tol = thresholds.eps_zero * scale
    if abs(D6) <= tol:
        return POLYNOMIAL
    if abs(D4) > tol:
        s2 = clamp_s2(D6 / D4, thresholds.s2_max)
        kind = BasisKind.HYPERBOLIC_C1 if s2 > 0.0 else BasisKind.TRIGONOMETRIC_C1
        return TensionDecision(kind, s2)
    if abs(D5) > tol:
        # D5 ~ dx^4 H^(5) carries one power of dx fewer than D6 / D4 does
        s2 = clamp_s2(dx * D6 / D5, thresholds.s2_max)
        kind = BasisKind.HYPERBOLIC_C2 if s2 > 0.0 else BasisKind.TRIGONOMETRIC_C2
        return TensionDecision(kind, s2)
    return POLYNOMIAL


def window_scale(window) -> float:
    return float(np.max(np.abs(window))) + 1.0
