"""Flux models, Lax-Friedrichs splitting, characteristic fields and the spatial operator."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from wenoh import kernels
from wenoh._kernels_py import eigen_matrices
from wenoh.grid import BoundaryConditions, UniformGrid, fill_ghosts
from wenoh.tension import Thresholds
from wenoh.weights import WeightParams


class NonPhysicalState(ArithmeticError):
    """Density or pressure left the admissible set."""


@dataclass(frozen=True)
class Advection:
    speed: float = 1.0
    ncomp: int = 1


@dataclass(frozen=True)
class Euler1D:
    gamma: float = 1.4
    ncomp: int = 3

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1")


@dataclass(frozen=True)
class Euler2D:
    gamma: float = 1.4
    gravity: bool = False
    ncomp: int = 4

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1")


FluxModel = Advection | Euler1D | Euler2D


# {{{ state conversions


def conserved(prim: np.ndarray, gamma: float) -> np.ndarray:
    """(rho, u, [v,] p) -> (rho, rho u, [rho v,] E) along the last axis."""
    prim = np.asarray(prim, dtype=float)
    rho = prim[..., 0]
    vel = prim[..., 1:-1]
    p = prim[..., -1]
    out = np.empty_like(prim)
    out[..., 0] = rho
    out[..., 1:-1] = rho[..., None] * vel
    out[..., -1] = p / (gamma - 1.0) + 0.5 * rho * (vel * vel).sum(axis=-1)
    return out


def primitive(q: np.ndarray, gamma: float) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    rho = q[..., 0]
    vel = q[..., 1:-1] / rho[..., None]
    out = np.empty_like(q)
    out[..., 0] = rho
    out[..., 1:-1] = vel
    out[..., -1] = (gamma - 1.0) * (q[..., -1] - 0.5 * rho * (vel * vel).sum(axis=-1))
    return out


def check_physical(q: np.ndarray, model: FluxModel, where: str = "") -> None:
    if isinstance(model, Advection):
        if not np.all(np.isfinite(q)):
            raise NonPhysicalState(f"non-finite value{where}")
        return
    w = primitive(q, model.gamma)
    bad = ~(np.isfinite(w).all(axis=-1) & (w[..., 0] > 0.0) & (w[..., -1] > 0.0))
    if np.any(bad):
        loc = tuple(int(i) for i in np.argwhere(bad)[0])
        rho, p = w[loc][0], w[loc][-1]
        raise NonPhysicalState(f"non-physical state at cell {loc}{where}: rho={rho:.6g}, p={p:.6g}")


# }}}


def physical_flux(q: np.ndarray, model: FluxModel, direction: int = 0) -> np.ndarray:
    """Physical flux F (direction 0) or G (direction 1) for states along the last axis."""
    q = np.asarray(q, dtype=float)
    if isinstance(model, Advection):
        return model.speed * q
    gamma = model.gamma
    rho = q[..., 0]
    E = q[..., -1]
    out = np.empty_like(q)
    if isinstance(model, Euler1D):
        u = q[..., 1] / rho
        p = (gamma - 1.0) * (E - 0.5 * rho * u * u)
        out[..., 0] = q[..., 1]
        out[..., 1] = q[..., 1] * u + p
        out[..., 2] = u * (E + p)
        return out
    u = q[..., 1] / rho
    v = q[..., 2] / rho
    p = (gamma - 1.0) * (E - 0.5 * rho * (u * u + v * v))
    un = u if direction == 0 else v
    out[..., 0] = rho * un
    out[..., 1] = q[..., 1] * un
    out[..., 2] = q[..., 2] * un
    out[..., 1 + direction] += p
    out[..., 3] = un * (E + p)
    return out


def lf_split(f_values: np.ndarray, q_values: np.ndarray, alpha) -> tuple[np.ndarray, np.ndarray]:
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0.0):
        raise ValueError("splitting speed must be positive")
    return 0.5 * (f_values + alpha * q_values), 0.5 * (f_values - alpha * q_values)


def _sound_and_normal(q: np.ndarray, model: FluxModel, direction: int):
    w = primitive(q, model.gamma)
    # a bad intermediate stage gives NaN here; the stepper guard reports it
    with np.errstate(invalid="ignore", divide="ignore"):
        c = np.sqrt(model.gamma * w[..., -1] / w[..., 0])
    return w[..., 1 + direction], c


def max_wavespeed(q: np.ndarray, model: FluxModel, direction: int = 0) -> float:
    if isinstance(model, Advection):
        return abs(model.speed)
    un, c = _sound_and_normal(q, model, direction)
    return float(np.max(np.abs(un) + c))


def field_wavespeeds(q: np.ndarray, model: FluxModel, direction: int = 0) -> np.ndarray:
    """Splitting speed per characteristic field: max of |u-c|, |u|, [|u|,] |u+c|."""
    if isinstance(model, Advection):
        return np.array([abs(model.speed)])
    un, c = _sound_and_normal(q, model, direction)
    a_minus = float(np.max(np.abs(un - c)))
    a_zero = float(np.max(np.abs(un)))
    a_plus = float(np.max(np.abs(un + c)))
    mids = [a_zero] * (model.ncomp - 2)
    speeds = np.array([a_minus, *mids, a_plus])
    # keep every split strictly upwind
    return np.maximum(speeds, 1.0e-12 * max(speeds.max(), 1.0))


@dataclass(frozen=True)
class RoeState:
    u: float
    v: float
    H: float
    c: float


def roe_average(qL, qR, gamma: float) -> RoeState:
    """Square-root-density weighted average of velocity and total enthalpy."""
    qL = np.asarray(qL, dtype=float)
    qR = np.asarray(qR, dtype=float)
    wl, wr = primitive(qL, gamma), primitive(qR, gamma)
    sl, sr = np.sqrt(wl[0]), np.sqrt(wr[0])
    Hl = (qL[-1] + wl[-1]) / wl[0]
    Hr = (qR[-1] + wr[-1]) / wr[0]
    u = (sl * wl[1] + sr * wr[1]) / (sl + sr)
    v = (sl * wl[2] + sr * wr[2]) / (sl + sr) if qL.size == 4 else 0.0
    H = (sl * Hl + sr * Hr) / (sl + sr)
    c2 = (gamma - 1.0) * (H - 0.5 * (u * u + v * v))
    if not c2 > 0.0:
        u = 0.5 * (wl[1] + wr[1])
        v = 0.5 * (wl[2] + wr[2]) if qL.size == 4 else 0.0
        H = 0.5 * (Hl + Hr)
        c2 = (gamma - 1.0) * (H - 0.5 * (u * u + v * v))
        if not c2 > 0.0:
            raise NonPhysicalState("Roe and arithmetic averages both give c^2 <= 0")
    return RoeState(float(u), float(v), float(H), float(np.sqrt(c2)))


@dataclass(frozen=True)
class EigenSystem:
    L: np.ndarray
    R: np.ndarray
    eigenvalues: np.ndarray


def eigensystem(avg: RoeState, model: FluxModel, direction: int = 0) -> EigenSystem:
    """Left/right eigenvectors of the flux Jacobian at a Roe state.

    For ``direction=1`` the matrices act on states in natural (x, y) momentum
    order.
    """
    m = model.ncomp
    un, ut = (avg.u, avg.v) if direction == 0 else (avg.v, avg.u)
    L, R = eigen_matrices(np.float64(un), np.float64(ut), np.float64(avg.H), np.float64(avg.c**2), model.gamma, m)
    lam = [un - avg.c] + [un] * (m - 2) + [un + avg.c]
    if m == 4 and direction == 1:
        perm = [0, 2, 1, 3]
        L = L[:, perm]
        R = R[perm, :]
    return EigenSystem(L, R, np.array(lam))


# {{{ semi-discrete operator


@dataclass
class SpatialOperator:
    """Right-hand side ``dq/dt = -div F`` with ghost filling and optional gravity."""

    grid: UniformGrid
    model: FluxModel
    bc: BoundaryConditions
    params: WeightParams = field(default_factory=WeightParams)
    thresholds: Thresholds = field(default_factory=Thresholds)
    workers: int = 1
    backend: str | None = None
    counters: np.ndarray = field(default_factory=lambda: np.zeros(kernels.NCOUNTERS, dtype=np.int64))

    def __post_init__(self) -> None:
        self._cfg = [kernels.KernelConfig.build(self.params, h, self.thresholds) for h in self.grid.spacing]
        if isinstance(self.model, Advection):
            self._model_id = kernels.MODEL_SCALAR
        elif isinstance(self.model, Euler1D):
            self._model_id = kernels.MODEL_EULER1D
        else:
            self._model_id = kernels.MODEL_EULER2D
        self._gamma = getattr(self.model, "gamma", 1.4)

    @property
    def stats(self) -> Counter:
        return Counter({k: int(v) for k, v in zip(kernels.COUNTER_NAMES, self.counters)})

    def _pencil_flux(self, pencils: np.ndarray, direction: int) -> np.ndarray:
        # pencils are always oriented with the sweep direction as x
        fl = physical_flux(pencils, self.model, 0)
        alpha = field_wavespeeds(pencils, self.model, 0)
        return kernels.sweep(
            pencils,
            fl,
            alpha,
            self._model_id,
            self._gamma,
            self._cfg[direction],
            self.grid.ghost,
            self.counters,
            self.workers,
            self.backend,
        )

    def __call__(self, q: np.ndarray, t: float) -> np.ndarray:
        grid = self.grid
        g = grid.ghost
        fill_ghosts(q, grid, self.bc, t)
        rhs = np.zeros_like(q)
        if grid.ndim == 1:
            hat = self._pencil_flux(q[None], 0)[0]
            rhs[g:-g] = -(hat[1:] - hat[:-1]) / grid.dx
            return rhs

        # x sweep over interior rows
        hat = self._pencil_flux(q[g:-g], 0)
        rhs[g:-g, g:-g] = -(hat[:, 1:] - hat[:, :-1]) / grid.dx
        # y sweep: columns as pencils with the momenta swapped
        cols = q[:, g:-g].transpose(1, 0, 2)[..., [0, 2, 1, 3]]
        hat = self._pencil_flux(cols, 1)[..., [0, 2, 1, 3]].transpose(1, 0, 2)
        rhs[g:-g, g:-g] -= (hat[1:] - hat[:-1]) / grid.dy
        if getattr(self.model, "gravity", False):
            inner = q[g:-g, g:-g]
            rhs[g:-g, g:-g, 2] += inner[..., 0]
            rhs[g:-g, g:-g, 3] += inner[..., 2]
        return rhs


def spatial_operator(q, grid, model, scheme, params=None, t=0.0, bc=None, **kw) -> np.ndarray:
    """One-shot evaluation of ``dq/dt``; see :class:`SpatialOperator`."""
    params = params or WeightParams(scheme=scheme)
    if bc is None:
        raise ValueError("boundary conditions required")
    return SpatialOperator(grid, model, bc, params, **kw)(q, t)


# }}}
