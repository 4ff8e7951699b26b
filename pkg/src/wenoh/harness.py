"""Simulation driver: run loops, error measurement, convergence/efficiency/compare reports."""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from wenoh import kernels
from wenoh.grid import UniformGrid, build_grid
from wenoh.integrators import CFL, STEPPERS, FixedPower, SolverDiverged, compute_dt
from wenoh.physics import Advection, NonPhysicalState, SpatialOperator, check_physical, max_wavespeed, primitive
from wenoh.problems import Analytic, ExactRiemann, FineGridSelf, ProblemSpec, cell_coords, get_problem, init_problem
from wenoh.tension import Thresholds
from wenoh.weights import Scheme, WeightParams

log = logging.getLogger(__name__)

CACHE_VERSION = 1


@dataclass
class RunConfig:
    problem: str
    scheme: str = "h"
    n: int | tuple[int, int] | None = None
    t_final: float | None = None
    cfl: float | None = None
    theta: float | None = None
    gamma_exp: float | None = None
    eps_zero: float | None = None
    s2_max: float | None = None
    workers: int = 1
    deterministic: bool = True
    backend: str | None = None
    out: str | None = None
    fixed_power: bool = False  # force RK4 + dt = dx**1.5

    def resolve(self) -> ProblemSpec:
        spec = get_problem(self.problem)
        Scheme.parse(self.scheme)
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        kw = {}
        if self.n is not None:
            kw["n"] = self.n
        if self.t_final is not None:
            if not self.t_final > 0.0:
                raise ValueError("t_final must be positive")
            kw["t_final"] = float(self.t_final)
        if self.fixed_power:
            kw["law"] = FixedPower(1.5)
            kw["stepper"] = "rk4"
        elif self.cfl is not None:
            kw["law"] = CFL(float(self.cfl))
        return spec.with_overrides(**kw)

    def weight_params(self, spec: ProblemSpec) -> WeightParams:
        kw = {"scheme": Scheme.parse(self.scheme)}
        theta = self.theta if self.theta is not None else spec.theta
        if theta is not None:
            kw["theta"] = float(theta)
        if self.gamma_exp is not None:
            kw["gamma"] = float(self.gamma_exp)
        return WeightParams(**kw)

    def thresholds(self) -> Thresholds:
        kw = {}
        if self.eps_zero is not None:
            kw["eps_zero"] = float(self.eps_zero)
        if self.s2_max is not None:
            kw["s2_max"] = float(self.s2_max)
        return Thresholds(**kw)


@dataclass
class RunResult:
    config: RunConfig
    spec: ProblemSpec
    grid: UniformGrid
    q: np.ndarray
    t: float
    steps: int
    dt_min: float
    dt_max: float
    wall_seconds: float
    counters: dict[str, int]
    status: str = "ok"
    failure: str | None = None
    failed_step: int | None = None
    backend: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def density(self) -> np.ndarray:
        inner = self.grid.interior(self.q)
        return inner[..., 0].copy()

    def summary(self) -> dict:
        return {
            "problem": self.spec.name,
            "scheme": Scheme.parse(self.config.scheme).name,
            "shape": list(self.grid.shape),
            "t_final": self.spec.t_final,
            "t_reached": self.t,
            "steps": self.steps,
            "dt": {"min": self.dt_min, "max": self.dt_max},
            "counters": self.counters,
            "status": self.status,
            "failure": self.failure,
            "failed_step": self.failed_step,
            "wall_seconds": self.wall_seconds,
            "backend": self.backend,
            "workers": self.config.workers,
        }


def make_grid(spec: ProblemSpec) -> UniformGrid:
    return build_grid(spec.bounds, spec.n)


def run(config: RunConfig) -> RunResult:
    """Integrate a preset to its final time; failures are reported, not raised."""
    spec = config.resolve()
    grid = make_grid(spec)
    q = init_problem(spec, grid)
    check_physical(grid.interior(q), spec.model, " in initial data")
    op = SpatialOperator(
        grid,
        spec.model,
        spec.bc,
        config.weight_params(spec),
        config.thresholds(),
        workers=config.workers,
        backend=config.backend,
    )
    stepper = STEPPERS[spec.stepper]
    t, steps = 0.0, 0
    dt_min, dt_max = math.inf, 0.0
    status, failure, failed_step = "ok", None, None
    t0 = time.perf_counter()
    n_fixed = spec.law.steps(grid.dx, spec.t_final) if isinstance(spec.law, FixedPower) else None
    try:
        while True:
            if n_fixed is not None:
                if steps >= n_fixed:
                    break
                dt = spec.t_final / n_fixed
            else:
                if spec.t_final - t <= 1.0e-13 * spec.t_final:
                    break
                inner = grid.interior(q)
                speeds = tuple(max_wavespeed(inner, spec.model, d) for d in range(grid.ndim))
                dt = compute_dt(speeds, grid.spacing, spec.law, t, spec.t_final)
            q = stepper(q, t, dt, op)
            steps += 1
            t = steps * dt if n_fixed is not None else (spec.t_final if dt == spec.t_final - t else t + dt)
            dt_min, dt_max = min(dt_min, dt), max(dt_max, dt)
            check_physical(grid.interior(q), spec.model, f" at step {steps}, t={t:.6g}")
    except (SolverDiverged, NonPhysicalState) as exc:
        status, failure, failed_step = "failed", str(exc), steps + 1
        log.warning("%s/%s failed: %s", spec.name, config.scheme, exc)
    wall = time.perf_counter() - t0
    return RunResult(
        config, spec, grid, q, t, steps, dt_min if steps else 0.0, dt_max, wall,
        dict(op.stats), status, failure, failed_step, config.backend or kernels.BACKEND,
    )


# {{{ errors and references


def reference_density(result: RunResult, cache_dir: Path | None = None) -> np.ndarray | None:
    """Reference density (or scalar) at the run's cell centers, if the preset has one."""
    spec = result.spec
    ref = spec.reference
    coords = cell_coords(result.grid)
    if isinstance(ref, Analytic):
        return ref.func(coords, result.t)
    if isinstance(ref, ExactRiemann):
        return ref.density(coords[0], result.t)
    if isinstance(ref, FineGridSelf):
        x_ref, rho_ref = fine_reference(spec, ref, result.t, cache_dir)
        return np.interp(coords[0], x_ref, rho_ref)
    return None


def fine_reference(spec: ProblemSpec, ref: FineGridSelf, t_final: float, cache_dir: Path | None):
    """Fine-grid self reference, cached as CSV with a versioned header."""
    tag = f"{spec.name}_{ref.scheme.upper()}_{ref.n}_t{t_final:.17g}"
    path = Path(cache_dir) / f"reference_{tag}.csv" if cache_dir is not None else None
    header = f"wenoh-reference v{CACHE_VERSION} problem={spec.name} scheme={ref.scheme} n={ref.n} t_final={t_final:.17g}"
    if path is not None and path.exists():
        with path.open() as fh:
            first = fh.readline().lstrip("#").strip()
        if first == header:
            data = np.loadtxt(path, comments="#", delimiter=",")
            return data[:, 0], data[:, 1]
        log.info("stale reference cache %s, recomputing", path)
    cfg = RunConfig(spec.name, ref.scheme, n=ref.n, t_final=t_final)
    res = run(cfg)
    if not res.ok:
        raise RuntimeError(f"reference run failed: {res.failure}")
    x = res.grid.centers(0)
    rho = res.density()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        np.savetxt(tmp, np.column_stack([x, rho]), fmt="%.17g", delimiter=",", header=header + "\nx,rho")
        tmp.replace(path)
    return x, rho


def error_norms(numeric: np.ndarray, exact: np.ndarray) -> tuple[float, float]:
    """Domain-averaged L1 (mean |e|) and max-norm errors."""
    e = np.abs(np.asarray(numeric) - np.asarray(exact))
    return float(e.mean()), float(e.max())


def orders(errors: list[float], ns: list[int]) -> list[float | None]:
    out: list[float | None] = [None]
    for k in range(1, len(errors)):
        if ns[k] == 2 * ns[k - 1] and errors[k] > 0.0 and errors[k - 1] > 0.0:
            out.append(math.log2(errors[k - 1] / errors[k]))
        else:
            out.append(None)
    return out


# }}}


# {{{ reports


@dataclass
class ErrorRow:
    n: int
    l1: float
    linf: float
    order_l1: float | None
    order_linf: float | None
    wall_seconds: float
    counters: dict = field(default_factory=dict)


def _with_n(config: RunConfig, n: int, ndim: int) -> RunConfig:
    d = asdict(config)
    d["n"] = n if ndim == 1 else (n, n)
    return RunConfig(**d)


def convergence(config: RunConfig, ns: list[int]) -> list[ErrorRow]:
    """Grid-refinement study with RK4 and dt = dx**1.5 against the analytic reference."""
    spec = get_problem(config.problem)
    if not isinstance(spec.reference, Analytic):
        raise ValueError(f"{spec.name} has no analytic reference")
    rows = []
    for n in ns:
        cfg = _with_n(config, n, spec.ndim)
        cfg.fixed_power = True
        res = run(cfg)
        if not res.ok:
            raise RuntimeError(f"{spec.name} N={n} failed: {res.failure}")
        l1, linf = error_norms(res.density(), reference_density(res))
        rows.append(ErrorRow(n, l1, linf, None, None, res.wall_seconds, res.counters))
    o1 = orders([r.l1 for r in rows], ns)
    oi = orders([r.linf for r in rows], ns)
    for r, a, b in zip(rows, o1, oi):
        r.order_l1, r.order_linf = a, b
    return rows


def efficiency(config: RunConfig, schemes: list[str], ns: list[int]) -> list[tuple[str, int, float, float]]:
    out = []
    for s in schemes:
        cfg = RunConfig(**{**asdict(config), "scheme": s})
        for r in convergence(cfg, ns):
            out.append((Scheme.parse(s).name, r.n, r.wall_seconds, r.linf))
    return out


def compare(config: RunConfig, schemes: list[str], cache_dir: Path | None = None) -> tuple[list[str], np.ndarray, dict]:
    """Profiles of several schemes on one grid plus reference and error columns."""
    results = [run(RunConfig(**{**asdict(config), "scheme": s})) for s in schemes]
    first = results[0]
    coords = cell_coords(first.grid)
    cols = [c.ravel() for c in coords]
    names = ["x", "y"][: len(coords)]
    label = "q" if isinstance(first.spec.model, Advection) else "rho"
    for s, r in zip(schemes, results):
        cols.append(r.density().ravel())
        names.append(f"{label}_{Scheme.parse(s).name}")
    ref = reference_density(first, cache_dir)
    errs = {}
    if ref is not None:
        ref = np.asarray(ref)
        cols.append(ref.ravel())
        names.append(f"{label}_ref")
        for s, r in zip(schemes, results):
            cols.append(np.abs(r.density() - ref).ravel())
            names.append(f"err_{Scheme.parse(s).name}")
            errs[Scheme.parse(s).name] = dict(zip(("l1", "linf"), error_norms(r.density(), ref)))
    meta = {
        "problem": first.spec.name,
        "shape": list(first.grid.shape),
        "t_final": first.spec.t_final,
        "runs": {Scheme.parse(s).name: r.summary() for s, r in zip(schemes, results)},
        "errors": errs,
    }
    return names, np.column_stack(cols), meta


# }}}


# {{{ output


def grid_tag(shape) -> str:
    return "x".join(str(k) for k in shape)


def write_solution(result: RunResult, out_dir: Path) -> Path:
    """Final-state CSV: coordinates, conserved and primitive variables."""
    out_dir.mkdir(parents=True, exist_ok=True)
    spec, grid = result.spec, result.grid
    name = f"{spec.name}_{Scheme.parse(result.config.scheme).name}_{grid_tag(grid.shape)}"
    coords = cell_coords(grid)
    inner = grid.interior(result.q)
    m = inner.shape[-1]
    if isinstance(spec.model, Advection):
        cons_names, prim_names = ["q"], []
        prim = np.empty(inner.shape[:-1] + (0,))
    else:
        cons_names = ["rho", "mx", "E"] if m == 3 else ["rho", "mx", "my", "E"]
        prim_names = ["u", "p"] if m == 3 else ["u", "v", "p"]
        prim = primitive(inner, spec.model.gamma)[..., 1:]
    cols = [c.ravel() for c in coords] + [inner[..., k].ravel() for k in range(m)]
    cols += [prim[..., k].ravel() for k in range(prim.shape[-1])]
    names = ["x", "y"][: len(coords)] + cons_names + prim_names
    units = {
        "x": "length", "y": "length", "q": "-", "rho": "mass/volume", "mx": "momentum/volume",
        "my": "momentum/volume", "E": "energy/volume", "u": "length/time", "v": "length/time",
        "p": "pressure",
    }
    header = (
        f"wenoh solution problem={spec.name} scheme={Scheme.parse(result.config.scheme).name} "
        f"shape={grid_tag(grid.shape)} t={result.t:.17g}\n"
        + ", ".join(f"{n} [{units[n]}]" for n in names)
    )
    path = out_dir / f"{name}.csv"
    np.savetxt(path, np.column_stack(cols), fmt="%.17g", delimiter=",", header=header)
    return path


def write_json(obj: dict, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


def write_table(path: Path, names: list[str], rows, header: str) -> Path:
    """CSV with a '#' header comment line; floats use %.17g."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {header}", ",".join(names)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def convergence_table(rows: list[ErrorRow]) -> tuple[list[str], list[tuple]]:
    names = ["N", "L1", "order_L1", "Linf", "order_Linf"]
    return names, [(r.n, r.l1, r.order_l1, r.linf, r.order_linf) for r in rows]


# }}}
