"""Interface coefficients from a polynomial or exponential primitive basis.

Everything is written in normalized coordinates ``t = (x - x_{j+1/2}) / dx``
and ``s2 = lambda**2 * dx**2``.  The primitive ``H`` of the flux is
interpolated on the six cell boundaries ``t = -3, ..., 2`` of the stencil
``j-2..j+2`` and differentiated at ``t = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

#: cell boundaries of cells j-2..j+2 relative to x_{j+1/2}
NODES = np.arange(-3.0, 3.0)

#: classical fifth-order upwind flux coefficients and optimal weights
CLASSICAL_C = np.array([2.0, -13.0, 47.0, 27.0, -3.0]) / 60.0
CLASSICAL_D = np.array([0.1, 0.6, 0.3])

#: third-order substencil coefficients, one row per substencil
SUBSTENCIL_C = np.array(
    [
        [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0],
        [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0],
        [1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
    ]
)

D_MIN = 0.01
COND_MAX = 1.0e12
SERIES_TERMS = 12

#: the trigonometric system over a node span of 5 needs 5*sigma < pi
TRIG_SIGMA_MAX = 0.95 * math.pi / 5.0
S2_TRIG_MIN = -(TRIG_SIGMA_MAX**2)


class BasisKind(enum.IntEnum):
    POLYNOMIAL = 0
    HYPERBOLIC_C1 = 1
    TRIGONOMETRIC_C1 = 2
    HYPERBOLIC_C2 = 3
    TRIGONOMETRIC_C2 = 4

    @property
    def is_c2(self) -> bool:
        return self in (BasisKind.HYPERBOLIC_C2, BasisKind.TRIGONOMETRIC_C2)


class BasisFallback(ArithmeticError):
    """The exponential system is singular or too ill-conditioned to use."""


@dataclass(frozen=True)
class InterfaceCoeffs:
    C: np.ndarray
    d: np.ndarray
    substituted: bool = False


def _check(kind: BasisKind, s2: float) -> None:
    if not math.isfinite(s2):
        raise ValueError(f"non-finite tension {s2}")
    if kind == BasisKind.POLYNOMIAL and s2 != 0.0:
        raise ValueError("polynomial basis carries s2 = 0")
    if kind in (BasisKind.HYPERBOLIC_C1, BasisKind.HYPERBOLIC_C2) and not s2 > 0.0:
        raise ValueError("hyperbolic basis needs s2 > 0")
    if kind in (BasisKind.TRIGONOMETRIC_C1, BasisKind.TRIGONOMETRIC_C2) and not s2 < 0.0:
        raise ValueError("trigonometric basis needs s2 < 0")


def _deflated(s2: float, t: float) -> tuple[float, float]:
    """(phi_4, phi_5) for the C1 basis at normalized tension ``s2``."""
    z = s2 * t * t
    if abs(z) < 0.25:
        # sum_k z^k t^4 / (2k+4)!  and  z^k t^5 / (2k+5)!
        p4 = p5 = 0.0
        for k in range(SERIES_TERMS - 1, -1, -1):
            p4 = p4 * z + 1.0 / math.factorial(2 * k + 4)
            p5 = p5 * z + 1.0 / math.factorial(2 * k + 5)
        return p4 * t**4, p5 * t**5
    if s2 > 0.0:
        sig = math.sqrt(s2)
        a = sig * t
        return (
            (math.cosh(a) - 1.0 - 0.5 * a * a) / sig**4,
            (math.sinh(a) - a - a**3 / 6.0) / sig**5,
        )
    mu = math.sqrt(-s2)
    a = mu * t
    return (
        (math.cos(a) - 1.0 + 0.5 * a * a) / mu**4,
        (math.sin(a) - a + a**3 / 6.0) / mu**5,
    )


def primitive_basis_values(kind: BasisKind, s2: float, t: float, dx: float = 1.0) -> np.ndarray:
    """Values of the six primitive basis functions at normalized ``t``.

    ``dx`` only matters for the C2 kinds, whose extra ``lambda**2 x**6 / 6!``
    term does not scale out of the normalized coordinates.
    """
    kind = BasisKind(kind)
    if not math.isfinite(t):
        raise ValueError(f"non-finite coordinate {t}")
    _check(kind, s2)
    out = np.array([t**n / math.factorial(n) for n in range(6)])
    if kind == BasisKind.POLYNOMIAL:
        return out
    out[4], out[5] = _deflated(s2, t)
    if kind.is_c2:
        out[5] += (s2 / dx) * t**6 / 720.0
    return out


def lagrange_derivative_weights(kind: BasisKind, s2: float, dx: float = 1.0) -> np.ndarray:
    """Weights ``w`` with ``sum_n w_n phi(t_n) = phi'(0)`` for every basis function."""
    A = np.array([primitive_basis_values(kind, s2, t, dx) for t in NODES]).T
    rhs = np.zeros(6)
    rhs[1] = 1.0
    if np.linalg.cond(A) > COND_MAX:
        raise BasisFallback(f"basis matrix ill-conditioned for {BasisKind(kind).name}, s2={s2}")
    return np.linalg.solve(A, rhs)


def optimal_weights(C: np.ndarray) -> np.ndarray:
    d0 = C[0] / SUBSTENCIL_C[0, 0]
    d1 = (C[1] - d0 * SUBSTENCIL_C[0, 1]) / SUBSTENCIL_C[1, 0]
    return np.array([d0, d1, 1.0 - d0 - d1])


def interface_coeffs(kind: BasisKind, s2: float, dx: float = 1.0) -> InterfaceCoeffs:
    """Global flux coefficients ``C`` over cells j-2..j+2 and optimal weights ``d``.

    Raises :class:`BasisFallback` when the linear system is unusable.
    """
    if BasisKind(kind) == BasisKind.POLYNOMIAL:
        return InterfaceCoeffs(CLASSICAL_C.copy(), CLASSICAL_D.copy())
    w = lagrange_derivative_weights(kind, s2, dx)
    # H at boundary n is the partial sum of cells 0..n-1
    C = np.array([w[ell + 1:].sum() for ell in range(5)])
    d = optimal_weights(C)
    if np.any(d < D_MIN) or np.any(d > 1.0 - D_MIN):
        return InterfaceCoeffs(C, CLASSICAL_D.copy(), substituted=True)
    return InterfaceCoeffs(C, d)


def local_flux(window3, k: int) -> float:
    """Third-order flux at x_{j+1/2} from the three values of substencil ``k``."""
    return float(np.dot(SUBSTENCIL_C[k], np.asarray(window3, dtype=float)))


# {{{ block-reduced form used by the compute kernels


def _exact_poly_inverse() -> list[list[Fraction]]:
    """Exact inverse of the polynomial node matrix ``V[k, n] = t_n**k / k!``."""
    nodes = [Fraction(int(t)) for t in NODES]
    V = [[t**k / math.factorial(k) for t in nodes] for k in range(6)]
    n = 6
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def reduced_constants() -> np.ndarray:
    """Rows ``(w_poly, n4, n5)``: columns 1, 4, 5 of the polynomial inverse.

    Any weight vector meeting the four polynomial rows is
    ``w_poly + b*n4 + c*n5``; the two exponential rows then reduce to a 2x2
    system in ``(b, c)``.
    """
    inv = _exact_poly_inverse()
    return np.array([[float(inv[n][col]) for n in range(6)] for col in (1, 4, 5)])


# }}}
