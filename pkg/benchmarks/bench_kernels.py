"""Compare the compiled and numpy sweep kernels on representative pencil batches.

Usage: python benchmarks/bench_kernels.py [--repeat 5] [--out results/bench_kernels.json]
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

import numpy as np

from wenoh import kernels
from wenoh.physics import Euler1D, Euler2D, conserved, field_wavespeeds, physical_flux
from wenoh.weights import Scheme, WeightParams

GHOST = 4


def _euler_batch(pencils: int, n: int, m: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 1.0, n + 2 * GHOST)
    prim = np.empty((pencils, x.size, m))
    prim[..., 0] = 1.0 + 0.5 * np.sin(4 * np.pi * x) + 0.3 * (x > 0.6)
    prim[..., 1:-1] = 0.5 + 0.1 * rng.standard_normal((pencils, x.size, m - 2))
    prim[..., -1] = 1.0 + 0.2 * np.cos(2 * np.pi * x)
    model = Euler1D() if m == 3 else Euler2D()
    q = conserved(prim, 1.4)
    return q, physical_flux(q, model, 0), field_wavespeeds(q, model, 0), 1 if m == 3 else 2


CASES = {
    "euler1d-1x400": (1, 400, 3),
    "euler1d-1x3200": (1, 3200, 3),
    "euler2d-200x200": (200, 200, 4),
}


def time_call(fn, repeat: int) -> float:
    fn()
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    backends = kernels.available_backends()
    rows = []
    for case, (pencils, n, m) in CASES.items():
        q, f, alpha, model = _euler_batch(pencils, n, m)
        for scheme in (Scheme.JS, Scheme.H):
            cfg = kernels.KernelConfig.build(WeightParams(scheme=scheme), 1.0 / n)
            times = {}
            outs = {}
            for b in backends:
                def call(b=b):
                    outs[b] = kernels.sweep(q, f, alpha, model, 1.4, cfg, GHOST, backend=b)

                times[b] = time_call(call, args.repeat if b == "cython" else max(1, args.repeat // 2))
            row = {"case": case, "scheme": scheme.name, **{f"{b}_s": t for b, t in times.items()}}
            if len(backends) == 2:
                row["speedup"] = times["numpy"] / times["cython"]
                row["max_abs_diff"] = float(np.abs(outs["numpy"] - outs["cython"]).max())
            rows.append(row)
            extra = f" speedup {row['speedup']:6.1f}x  max|diff| {row['max_abs_diff']:.1e}" if "speedup" in row else ""
            print(f"{case:<18} {scheme.name:<3}" + "".join(f" {b} {t * 1e3:9.2f} ms" for b, t in times.items()) + extra)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(rows, indent=2) + "\n")


if __name__ == "__main__":
    main()
