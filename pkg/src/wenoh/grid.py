"""Uniform Cartesian grids with ghost layers and boundary-condition filling.

Fields are numpy arrays with the component index last.  A 1D field has shape
``(nx + 2*ghost, m)``; a 2D field is stored row-major with ``y`` outer and
``x`` inner, shape ``(ny + 2*ghost, nx + 2*ghost, m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MIN_GHOST = 4


class ConfigurationError(ValueError):
    """Raised for an invalid grid or boundary configuration."""


@dataclass(frozen=True)
class UniformGrid:
    """Cell-centred uniform grid in one or two dimensions."""

    bounds: tuple[tuple[float, float], ...]
    shape: tuple[int, ...]
    ghost: int = MIN_GHOST
    spacing: tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        if len(self.bounds) != len(self.shape) or len(self.shape) not in (1, 2):
            raise ConfigurationError("bounds and shape must both be 1D or 2D")
        if self.ghost < MIN_GHOST:
            raise ConfigurationError(f"ghost must be >= {MIN_GHOST}, got {self.ghost}")
        spacing = []
        for (lo, hi), n in zip(self.bounds, self.shape):
            if not hi > lo:
                raise ConfigurationError(f"inverted bounds ({lo}, {hi})")
            if n < 2 * self.ghost:
                raise ConfigurationError(f"N={n} smaller than 2*ghost={2 * self.ghost}")
            spacing.append((hi - lo) / n)
        object.__setattr__(self, "spacing", tuple(spacing))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def dx(self) -> float:
        return self.spacing[0]

    @property
    def dy(self) -> float:
        if self.ndim < 2:
            raise AttributeError("1D grid has no dy")
        return self.spacing[1]

    @property
    def nx(self) -> int:
        return self.shape[0]

    @property
    def ny(self) -> int:
        return self.shape[1]

    def centers(self, axis: int = 0) -> np.ndarray:
        """Interior cell centres along ``axis`` (0 = x, 1 = y)."""
        lo = self.bounds[axis][0]
        h = self.spacing[axis]
        return lo + (np.arange(self.shape[axis]) + 0.5) * h

    def padded_centers(self, axis: int = 0) -> np.ndarray:
        lo = self.bounds[axis][0]
        h = self.spacing[axis]
        g = self.ghost
        return lo + (np.arange(-g, self.shape[axis] + g) + 0.5) * h

    def field_shape(self, ncomp: int) -> tuple[int, ...]:
        g2 = 2 * self.ghost
        if self.ndim == 1:
            return (self.nx + g2, ncomp)
        return (self.ny + g2, self.nx + g2, ncomp)

    def allocate(self, ncomp: int) -> np.ndarray:
        return np.zeros(self.field_shape(ncomp))

    def interior(self, field: np.ndarray) -> np.ndarray:
        g = self.ghost
        if self.ndim == 1:
            return field[g:-g]
        return field[g:-g, g:-g]


def build_grid(
    bounds: Sequence[float] | Sequence[Sequence[float]],
    n: int | Sequence[int],
    ghost: int = MIN_GHOST,
) -> UniformGrid:
    """Build a grid from ``[lo, hi]`` (1D) or ``[[xlo, xhi], [ylo, yhi]]`` (2D)."""
    if np.ndim(bounds) == 1:
        bounds_t = ((float(bounds[0]), float(bounds[1])),)
    else:
        bounds_t = tuple((float(lo), float(hi)) for lo, hi in bounds)
    if isinstance(n, (int, np.integer)):
        shape = (int(n),) * len(bounds_t)
    else:
        shape = tuple(int(k) for k in n)
    return UniformGrid(bounds_t, shape, ghost)


# {{{ boundary conditions


@dataclass(frozen=True)
class Periodic:
    pass


@dataclass(frozen=True)
class Outflow:
    pass


@dataclass(frozen=True)
class Reflective:
    pass


@dataclass(frozen=True)
class DirichletInflow:
    state: tuple[float, ...]


@dataclass(frozen=True)
class DoubleMachTop:
    """Top boundary following the analytic Mach 10 shock position."""

    post: tuple[float, ...]
    pre: tuple[float, ...]
    x0: float = 1.0 / 6.0
    speed: float = 10.0

    def shock_position(self, t: float, y: float) -> float:
        # shock inclined at 60 degrees moving right with speed 10
        return self.x0 + (y + 2.0 * self.speed * t) / math.sqrt(3.0)


@dataclass(frozen=True)
class DoubleMachBottom:
    """Post-shock state for ``x <= x0``, reflective wall beyond."""

    post: tuple[float, ...]
    x0: float = 1.0 / 6.0


BoundaryKind = (Periodic, Outflow, Reflective, DirichletInflow, DoubleMachTop, DoubleMachBottom)


@dataclass(frozen=True)
class BoundaryConditions:
    """Boundary kind per side; ``bottom``/``top`` are ignored in 1D."""

    left: object
    right: object
    bottom: object = None
    top: object = None

    @classmethod
    def uniform(cls, kind: object) -> "BoundaryConditions":
        return cls(kind, kind, kind, kind)


def _check_kind(kind: object) -> None:
    if not isinstance(kind, BoundaryKind):
        raise ConfigurationError(f"unknown boundary condition {kind!r}")


def _fill_axis(
    arr: np.ndarray,
    g: int,
    lo_kind: object,
    hi_kind: object,
    normal: int,
    coords_other: np.ndarray | None,
    t: float,
    y_top: float | None,
) -> None:
    """Fill ghosts along axis 0 of ``arr`` (shape ``(n_padded, ..., m)``)."""
    n = arr.shape[0] - 2 * g
    for side, kind in (("lo", lo_kind), ("hi", hi_kind)):
        _check_kind(kind)
        if side == "lo":
            ghost = slice(0, g)
            mirror = slice(2 * g - 1, g - 1, -1)
            nearest = slice(g, g + 1)
        else:
            ghost = slice(n + g, n + 2 * g)
            mirror = slice(n + g - 1, n - 1, -1)
            nearest = slice(n + g - 1, n + g)

        if isinstance(kind, Periodic):
            arr[ghost] = arr[n:n + g] if side == "lo" else arr[g:2 * g]
        elif isinstance(kind, Outflow):
            arr[ghost] = arr[nearest]
        elif isinstance(kind, Reflective):
            _reflect(arr, ghost, mirror, normal)
        elif isinstance(kind, DirichletInflow):
            arr[ghost] = np.asarray(kind.state, dtype=float)
        elif isinstance(kind, DoubleMachTop):
            if coords_other is None or y_top is None:
                raise ConfigurationError("DoubleMachTop needs a 2D grid")
            xs = kind.shock_position(t, y_top)
            state = np.where((coords_other < xs)[:, None], np.asarray(kind.post), np.asarray(kind.pre))
            arr[ghost] = state[None, :, :]
        elif isinstance(kind, DoubleMachBottom):
            if coords_other is None:
                raise ConfigurationError("DoubleMachBottom needs a 2D grid")
            _reflect(arr, ghost, mirror, normal)
            inflow = coords_other <= kind.x0
            arr[ghost, inflow] = np.asarray(kind.post)


def _reflect(arr: np.ndarray, ghost: slice, mirror: slice, normal: int) -> None:
    if arr.shape[-1] < 2:
        raise ConfigurationError("reflective boundary needs a momentum component")
    arr[ghost] = arr[mirror]
    arr[ghost, ..., normal] *= -1.0


def fill_ghosts(
    field: np.ndarray, grid: UniformGrid, bc: BoundaryConditions, t: float = 0.0
) -> np.ndarray:
    """Populate every ghost layer of ``field`` in place; interior untouched."""
    g = grid.ghost
    if grid.ndim == 1:
        _fill_axis(field, g, bc.left, bc.right, 1, None, t, None)
        return field

    # x direction on interior rows, then y direction on every column
    rows = field[g:-g].swapaxes(0, 1)
    _fill_axis(rows, g, bc.left, bc.right, 1, None, t, None)
    x = grid.padded_centers(0)
    _fill_axis(field, g, bc.bottom, bc.top, 2, x, t, grid.bounds[1][1])
    return field


# }}}
