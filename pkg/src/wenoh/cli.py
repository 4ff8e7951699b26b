"""Command-line front end: ``wenoh {run,convergence,efficiency,compare,list}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from pathlib import Path

from wenoh import harness, kernels
from wenoh.problems import REGISTRY
from wenoh.weights import Scheme

SCHEMES = ("js", "m", "z", "h")


def _grid_size(text: str):
    if "x" in text:
        nx, ny = text.split("x")
        return (int(nx), int(ny))
    return int(text)


def _common(p: argparse.ArgumentParser, multi_scheme: bool = False, multi_n: bool = False) -> None:
    p.add_argument("--config", type=Path, help="JSON file with option defaults (flags win)")
    p.add_argument("--problem", help="preset name, see `wenoh list`")
    if multi_scheme:
        p.add_argument("--schemes", nargs="+", choices=SCHEMES, help="schemes to run")
    else:
        p.add_argument("--scheme", choices=SCHEMES, help="reconstruction scheme (default h)")
    if multi_n:
        p.add_argument("--n", nargs="+", type=int, help="grid sizes (N or N x N in 2D)")
    else:
        p.add_argument("--n", type=_grid_size, help="grid size: N, or NXxNY in 2D")
    p.add_argument("--t-final", type=float, dest="t_final")
    p.add_argument("--cfl", type=float)
    p.add_argument("--theta", type=float, help="weight on the first-order ID term of beta")
    p.add_argument("--gamma-exp", type=float, dest="gamma_exp", help="epsilon = dx**gamma in the H weights")
    p.add_argument("--eps-zero", type=float, dest="eps_zero", help="relative zero test in tension selection")
    p.add_argument("--s2-max", type=float, dest="s2_max", help="clamp on the normalized tension")
    p.add_argument("--workers", type=int, help="threads for the pencil sweeps")
    p.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="bitwise-reproducible output across worker counts (always true for this kernel)",
    )
    p.add_argument("--backend", choices=("cython", "numpy"))
    p.add_argument("--out", type=Path, help="output directory (default ./results)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wenoh", description="WENO-H finite-difference solver and benchmarks")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("run", help="integrate one preset and write CSV + JSON summary"))
    _common(sub.add_parser("convergence", help="error/order table (RK4, dt = dx^1.5)"), multi_n=True)
    _common(sub.add_parser("efficiency", help="CPU time versus max-norm error"), multi_scheme=True, multi_n=True)
    _common(sub.add_parser("compare", help="profiles of several schemes on one grid"), multi_scheme=True)
    sub.add_parser("list", help="list presets")
    return parser


_CONFIG_KEYS = {f.name for f in fields(harness.RunConfig)} | {"schemes", "config"}


def merge_config(args: argparse.Namespace) -> dict:
    """Config-file values overridden by any flag given on the command line."""
    merged: dict = {}
    if getattr(args, "config", None) is not None:
        data = json.loads(Path(args.config).read_text())
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise SystemExit(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(data)
    for k, v in vars(args).items():
        if k in ("command", "verbose", "config") or v is None:
            continue
        merged[k] = v
    if "problem" not in merged:
        raise SystemExit("--problem is required")
    return merged


def _run_config(merged: dict, **extra) -> harness.RunConfig:
    kw = {k: v for k, v in merged.items() if k in {f.name for f in fields(harness.RunConfig)}}
    kw.update(extra)
    if isinstance(kw.get("n"), list):
        kw["n"] = tuple(kw["n"])
    kw["out"] = None if kw.get("out") is None else str(kw["out"])
    return harness.RunConfig(**kw)


def _out_dir(merged: dict) -> Path:
    return Path(merged.get("out") or "results")


def cmd_run(merged: dict) -> int:
    cfg = _run_config(merged)
    res = harness.run(cfg)
    out = _out_dir(merged)
    path = harness.write_solution(res, out)
    summary = res.summary()
    ref = harness.reference_density(res, out) if res.ok else None
    if ref is not None:
        l1, linf = harness.error_norms(res.density(), ref)
        summary["errors"] = {"l1": l1, "linf": linf}
    jpath = harness.write_json(summary, path.with_suffix(".json"))
    print(f"{res.status}: {path} {jpath} steps={res.steps} wall={res.wall_seconds:.2f}s")
    if not res.ok:
        print(f"failure: {res.failure}", file=sys.stderr)
        return 2
    return 0


def cmd_convergence(merged: dict) -> int:
    ns = merged.get("n") or [50, 100, 200, 400]
    cfg = _run_config({k: v for k, v in merged.items() if k != "n"})
    rows = harness.convergence(cfg, list(ns))
    names, table = harness.convergence_table(rows)
    scheme = Scheme.parse(cfg.scheme).name
    out = _out_dir(merged)
    path = harness.write_table(
        out / f"convergence_{cfg.problem}_{scheme}.csv",
        names,
        table,
        f"convergence problem={cfg.problem} scheme={scheme}; L1 = mean |rho - exact| over cells, Linf = max",
    )
    harness.write_json(
        {
            "problem": cfg.problem,
            "scheme": scheme,
            "rows": [
                {"n": r.n, "l1": r.l1, "linf": r.linf, "wall_seconds": r.wall_seconds, "counters": r.counters}
                for r in rows
            ],
        },
        path.with_suffix(".json"),
    )
    print(f"{'N':>6} {'L1':>12} {'order':>6} {'Linf':>12} {'order':>6}")
    for r in rows:
        o1 = "" if r.order_l1 is None else f"{r.order_l1:.2f}"
        oi = "" if r.order_linf is None else f"{r.order_linf:.2f}"
        print(f"{r.n:>6} {r.l1:12.3e} {o1:>6} {r.linf:12.3e} {oi:>6}")
    print(path)
    return 0


def cmd_efficiency(merged: dict) -> int:
    schemes = merged.get("schemes") or list(SCHEMES)
    ns = merged.get("n") or [50, 100, 200, 400]
    cfg = _run_config({k: v for k, v in merged.items() if k not in ("n", "schemes")})
    rows = harness.efficiency(cfg, schemes, list(ns))
    path = harness.write_table(
        _out_dir(merged) / f"efficiency_{cfg.problem}.csv",
        ["scheme", "N", "wall_seconds", "Linf"],
        rows,
        f"efficiency problem={cfg.problem}; wall_seconds [s] excludes I/O, Linf of density",
    )
    for r in rows:
        print(f"{r[0]:>3} {r[1]:>6} {r[2]:10.3f}s {r[3]:12.3e}")
    print(path)
    return 0


def cmd_compare(merged: dict) -> int:
    schemes = merged.get("schemes") or list(SCHEMES)
    cfg = _run_config({k: v for k, v in merged.items() if k != "schemes"})
    out = _out_dir(merged)
    names, data, meta = harness.compare(cfg, schemes, out)
    tag = harness.grid_tag(meta["shape"])
    path = harness.write_table(
        out / f"compare_{cfg.problem}_{tag}.csv",
        names,
        data.tolist(),
        f"compare problem={cfg.problem} shape={tag} t={meta['t_final']:.17g}",
    )
    harness.write_json(meta, path.with_suffix(".json"))
    for s, e in meta["errors"].items():
        print(f"{s:>3} L1={e['l1']:.4e} Linf={e['linf']:.4e}")
    print(path)
    failed = [s for s, r in meta["runs"].items() if r["status"] != "ok"]
    return 2 if failed else 0


def cmd_list() -> int:
    for name, spec in sorted(REGISTRY.items()):
        shape = spec.n if isinstance(spec.n, int) else "x".join(map(str, spec.n))
        print(f"{name:<20} {shape!s:>9}  t={spec.t_final:<5g} {spec.description}")
    print(f"backends: {', '.join(kernels.available_backends())} (default {kernels.BACKEND})")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "list":
        return cmd_list()
    merged = merge_config(args)
    handler = {
        "run": cmd_run,
        "convergence": cmd_convergence,
        "efficiency": cmd_efficiency,
        "compare": cmd_compare,
    }[args.command]
    try:
        return handler(merged)
    except (KeyError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
