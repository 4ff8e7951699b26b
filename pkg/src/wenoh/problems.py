"""Named benchmark presets: initial data, boundaries, final times and references."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from wenoh.grid import (
    BoundaryConditions,
    DirichletInflow,
    DoubleMachBottom,
    DoubleMachTop,
    Outflow,
    Periodic,
    Reflective,
    UniformGrid,
)
from wenoh.integrators import CFL, FixedPower, TimeStepLaw
from wenoh.physics import Advection, Euler1D, Euler2D, FluxModel, conserved
from wenoh.riemann import exact_riemann


class UnknownProblem(KeyError):
    pass


# {{{ reference descriptors


@dataclass(frozen=True)
class Analytic:
    """Closed-form reference; ``func(coords, t)`` returns density (or q for scalars)."""

    func: Callable


@dataclass(frozen=True)
class ExactRiemann:
    left: tuple[float, float, float]
    right: tuple[float, float, float]
    gamma: float
    x0: float

    def density(self, x: np.ndarray, t: float) -> np.ndarray:
        return exact_riemann(self.left, self.right, self.gamma, (np.asarray(x) - self.x0) / t)[..., 0]


@dataclass(frozen=True)
class FineGridSelf:
    scheme: str = "js"
    n: int = 3200


Reference = Analytic | ExactRiemann | FineGridSelf


# }}}


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    model: FluxModel
    bounds: tuple
    n: int | tuple[int, int]
    bc: BoundaryConditions
    initial: Callable  # coords -> primitive state (or scalar q) per cell
    t_final: float
    law: TimeStepLaw = field(default_factory=CFL)
    stepper: str = "rk3"
    theta: float | None = None
    reference: Reference | None = None
    description: str = ""

    @property
    def ndim(self) -> int:
        return len(self.bounds) if np.ndim(self.bounds) == 2 else 1

    def with_overrides(self, **kw) -> "ProblemSpec":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


# {{{ initial data


def _q0_sing(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.where(
        x <= -1.0 / 3.0,
        -x * np.sin(1.5 * np.pi * x * x),
        np.where(x <= 1.0 / 3.0, np.abs(np.sin(2.0 * np.pi * x)), 2.0 * x - 1.0 - np.sin(3.0 * np.pi * x) / 6.0),
    )


def exact_advection(x, t: float) -> np.ndarray:
    """Exact solution of ``q_t + q_x = 0`` with the singular periodic data on [-1, 1]."""
    xs = np.mod(np.asarray(x, dtype=float) - t + 1.0, 2.0) - 1.0
    return _q0_sing(xs)


def exact_smooth_euler(x, y=None, t: float = 0.0) -> np.ndarray:
    """Primitive state of the smooth density wave; 1D when ``y`` is None."""
    x = np.asarray(x, dtype=float)
    if y is None:
        rho = 1.0 + 0.5 * np.sin(4.0 * np.pi * (x - t))
        return np.stack([rho, np.ones_like(rho), np.ones_like(rho)], axis=-1)
    y = np.asarray(y, dtype=float)
    u, v = 1.0, -0.5
    rho = 1.0 + 0.5 * np.sin(4.0 * np.pi * (x + y - t * (u + v)))
    one = np.ones_like(rho)
    return np.stack([rho, u * one, v * one, one], axis=-1)


def _riemann_1d(left, right, x0):
    def init(x):
        return np.where((x < x0)[..., None], np.asarray(left, float), np.asarray(right, float))

    return init


def _shu_osher(k: float):
    def init(x):
        right = np.stack([1.0 + 0.2 * np.sin(k * x), 0.0 * x, 1.0 + 0.0 * x], axis=-1)
        return np.where((x < -4.0)[..., None], np.array([3.857143, 2.629369, 10.33333]), right)

    return init


def _titarev_toro(x):
    right = np.stack([1.0 + 0.1 * np.sin(20.0 * np.pi * x), 0.0 * x, 1.0 + 0.0 * x], axis=-1)
    return np.where((x < -4.0)[..., None], np.array([1.515695, 0.523346, 1.80500]), right)


RTI_GAMMA = 5.0 / 3.0


def _rti(x, y):
    heavy = y < 0.5
    rho = np.where(heavy, 2.0, 1.0)
    p = np.where(heavy, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(RTI_GAMMA * p / rho)
    v = -0.025 * c * np.cos(8.0 * np.pi * x)
    return np.stack([rho, 0.0 * x, v, p], axis=-1)


CONFIG3 = {
    "ne": (1.5, 0.0, 0.0, 1.5),
    "nw": (0.5323, 1.206, 0.0, 0.3),
    "sw": (0.138, 1.206, 1.206, 0.029),
    "se": (0.5323, 0.0, 1.206, 0.3),
}


def _riemann2d_config3(x, y):
    east = x >= 0.8
    north = y >= 0.8
    out = np.empty(np.shape(x) + (4,))
    for key, mask in (
        ("ne", east & north),
        ("nw", ~east & north),
        ("sw", ~east & ~north),
        ("se", east & ~north),
    ):
        out[mask] = CONFIG3[key]
    return out


DMR_PRE = (1.4, 0.0, 0.0, 1.0)
DMR_POST = (8.0, 8.25 * math.cos(math.pi / 6.0), -8.25 * math.sin(math.pi / 6.0), 116.5)
DMR_X0 = 1.0 / 6.0


def _double_mach(x, y):
    behind = x < DMR_X0 + y / math.sqrt(3.0)
    return np.where(behind[..., None], np.array(DMR_POST), np.array(DMR_PRE))


def _explosion(x, y):
    inside = x * x + y * y < 0.16
    return np.where(inside[..., None], np.array([1.0, 0.0, 0.0, 1.0]), np.array([0.125, 0.0, 0.0, 0.1]))


# }}}


def _euler_bc_state(prim, gamma):
    return tuple(float(v) for v in conserved(np.asarray(prim, dtype=float), gamma))


def _smooth_1d_density(coords, t):
    return exact_smooth_euler(coords[0], None, t)[..., 0]


def _smooth_2d_density(coords, t):
    return exact_smooth_euler(coords[0], coords[1], t)[..., 0]


def _advection_reference(coords, t):
    return exact_advection(coords[0], t)


SOD_LEFT, SOD_RIGHT = (1.0, 0.75, 1.0), (0.125, 0.0, 0.1)
LAX_LEFT, LAX_RIGHT = (0.445, 0.698, 3.528), (0.5, 0.0, 0.571)


def _build_registry() -> dict[str, ProblemSpec]:
    periodic = BoundaryConditions.uniform(Periodic())
    outflow = BoundaryConditions.uniform(Outflow())
    g = 1.4
    rti_bc = BoundaryConditions(
        Reflective(),
        Reflective(),
        DirichletInflow(_euler_bc_state((2.0, 0.0, 0.0, 1.0), RTI_GAMMA)),
        DirichletInflow(_euler_bc_state((1.0, 0.0, 0.0, 2.5), RTI_GAMMA)),
    )
    post = _euler_bc_state(DMR_POST, g)
    dmr_bc = BoundaryConditions(
        DirichletInflow(post),
        Outflow(),
        DoubleMachBottom(post, DMR_X0),
        DoubleMachTop(post, _euler_bc_state(DMR_PRE, g), DMR_X0),
    )
    specs = [
        ProblemSpec(
            "smooth-euler-1d", Euler1D(g), (-1.0, 1.0), 200, periodic, lambda x: exact_smooth_euler(x),
            4.0, FixedPower(1.5), "rk4", reference=Analytic(_smooth_1d_density),
            description="periodic density wave, u=1, p=1 (accuracy test)",
        ),
        ProblemSpec(
            "smooth-euler-2d", Euler2D(g), ((-1.0, 1.0), (-1.0, 1.0)), (100, 100), periodic,
            lambda x, y: exact_smooth_euler(x, y), 4.0, FixedPower(1.5), "rk4",
            reference=Analytic(_smooth_2d_density),
            description="periodic diagonal density wave, u=1, v=-1/2, p=1",
        ),
        ProblemSpec(
            "advection-sing", Advection(1.0), (-1.0, 1.0), 200, periodic, _q0_sing, 11.0, CFL(0.4),
            theta=0.1, reference=Analytic(_advection_reference),
            description="linear advection of piecewise data with kinks and jumps",
        ),
        ProblemSpec(
            "shu-osher", Euler1D(g), (-5.0, 5.0), 250, outflow, _shu_osher(5.0), 1.8, CFL(0.5),
            reference=FineGridSelf("js", 3200), description="Mach 3 shock into entropy wave, k=5",
        ),
        ProblemSpec(
            "shu-osher-k10", Euler1D(g), (-5.0, 5.0), 500, outflow, _shu_osher(10.0), 1.8, CFL(0.5),
            reference=FineGridSelf("js", 3200), description="Mach 3 shock into entropy wave, k=10",
        ),
        ProblemSpec(
            "titarev-toro", Euler1D(g), (-5.0, 5.0), 1500, outflow, _titarev_toro, 5.0, CFL(0.5),
            description="shock into high-frequency entropy wave",
        ),
        ProblemSpec(
            "lax", Euler1D(g), (-5.0, 5.0), 200, outflow, _riemann_1d(LAX_LEFT, LAX_RIGHT, 0.0), 0.16,
            CFL(0.5), reference=ExactRiemann(LAX_LEFT, LAX_RIGHT, g, 0.0), description="Lax shock tube",
        ),
        ProblemSpec(
            "sod", Euler1D(g), (0.0, 1.0), 200, outflow, _riemann_1d(SOD_LEFT, SOD_RIGHT, 0.5), 0.2,
            CFL(0.5), reference=ExactRiemann(SOD_LEFT, SOD_RIGHT, g, 0.5),
            description="Sod shock tube with u_L = 0.75",
        ),
        ProblemSpec(
            "rti", Euler2D(RTI_GAMMA, gravity=True), ((0.0, 0.25), (0.0, 1.0)), (120, 480), rti_bc, _rti,
            1.95, CFL(0.5), description="Rayleigh-Taylor instability, gamma=5/3",
        ),
        ProblemSpec(
            "riemann2d-config3", Euler2D(g), ((0.0, 1.0), (0.0, 1.0)), (500, 500), outflow,
            _riemann2d_config3, 0.8, CFL(0.5), description="2D Riemann problem, configuration 3",
        ),
        ProblemSpec(
            "double-mach", Euler2D(g), ((0.0, 4.0), (0.0, 1.0)), (960, 240), dmr_bc, _double_mach, 0.2,
            CFL(0.5), description="double Mach reflection of a Mach 10 shock",
        ),
        ProblemSpec(
            "explosion", Euler2D(g), ((-1.5, 1.5), (-1.5, 1.5)), (600, 600), outflow, _explosion, 3.2,
            CFL(0.5), description="cylindrical explosion, radius 0.4",
        ),
    ]
    return {s.name: s for s in specs}


REGISTRY: dict[str, ProblemSpec] = _build_registry()


def get_problem(name: str) -> ProblemSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownProblem(f"unknown problem {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def cell_coords(grid: UniformGrid) -> tuple[np.ndarray, ...]:
    """Interior cell-center coordinates, broadcast to the interior field shape."""
    if grid.ndim == 1:
        return (grid.centers(0),)
    X, Y = np.meshgrid(grid.centers(0), grid.centers(1))
    return X, Y


def initial_primitive(spec: ProblemSpec, grid: UniformGrid) -> np.ndarray:
    if grid.ndim != spec.ndim:
        raise ValueError(f"{spec.name} is {spec.ndim}D but the grid is {grid.ndim}D")
    return np.asarray(spec.initial(*cell_coords(grid)), dtype=float)


def init_problem(name: str | ProblemSpec, grid: UniformGrid) -> np.ndarray:
    """Padded conserved field with the interior sampled at cell centers."""
    spec = get_problem(name) if isinstance(name, str) else name
    prim = initial_primitive(spec, grid)
    field_ = grid.allocate(spec.model.ncomp)
    if isinstance(spec.model, Advection):
        grid.interior(field_)[..., 0] = prim
    else:
        grid.interior(field_)[:] = conserved(prim, spec.model.gamma)
    return field_
