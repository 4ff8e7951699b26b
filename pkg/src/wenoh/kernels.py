"""Backend selection for the pencil sweep kernel.

The compiled extension ``wenoh._ckernels`` is used when it imports; the
vectorized numpy module ``wenoh._kernels_py`` is the fallback.  Setting
``WENOH_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from wenoh import _kernels_py
from wenoh.basis import D_MIN, S2_TRIG_MIN, reduced_constants
from wenoh.tension import Thresholds
from wenoh.weights import WeightParams

#: branch counter slots, shared by both backends
COUNTER_NAMES = (
    "polynomial",
    "hyperbolic_c1",
    "trigonometric_c1",
    "hyperbolic_c2",
    "trigonometric_c2",
    "fallback",
    "d_substituted",
    "componentwise",
)
NCOUNTERS = len(COUNTER_NAMES)

MODEL_SCALAR, MODEL_EULER1D, MODEL_EULER2D = 0, 1, 2

REDUCED = np.ascontiguousarray(reduced_constants())


@dataclass(frozen=True)
class KernelConfig:
    scheme: int
    theta: float
    eps_h: float
    eps_base: float
    eps_zero: float
    s2_max: float
    s2_trig_min: float
    d_min: float
    dx: float

    @classmethod
    def build(cls, params: WeightParams, dx: float, thresholds: Thresholds = Thresholds()) -> "KernelConfig":
        return cls(
            scheme=int(params.scheme),
            theta=params.theta,
            eps_h=dx**params.gamma,
            eps_base=params.eps_base,
            eps_zero=thresholds.eps_zero,
            s2_max=thresholds.s2_max,
            s2_trig_min=S2_TRIG_MIN,
            d_min=D_MIN,
            dx=dx,
        )


def _load_compiled():
    if os.environ.get("WENOH_PURE_PYTHON", "") not in ("", "0"):
        return None
    try:
        from wenoh import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
BACKEND = "cython" if _compiled is not None else "numpy"


def available_backends() -> list[str]:
    return ["numpy"] + (["cython"] if _compiled is not None else [])


def sweep(
    q: np.ndarray,
    f: np.ndarray,
    alpha: np.ndarray,
    model: int,
    gamma: float,
    cfg: KernelConfig,
    ghost: int,
    counters: np.ndarray | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Interface fluxes for a batch of pencils.

    ``q`` and ``f`` have shape ``(P, n + 2*ghost, m)``; the result has shape
    ``(P, n + 1, m)``, entry ``i`` being the flux between interior cells
    ``i - 1`` and ``i``.  For Euler pencils the normal momentum is
    component 1.  ``counters`` (length :data:`NCOUNTERS`) is incremented.
    """
    q = np.ascontiguousarray(q, dtype=np.float64)
    f = np.ascontiguousarray(f, dtype=np.float64)
    alpha = np.ascontiguousarray(alpha, dtype=np.float64)
    if counters is None:
        counters = np.zeros(NCOUNTERS, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not available")
        return _compiled.sweep(q, f, alpha, model, gamma, cfg, ghost, counters, REDUCED, workers)
    if backend != "numpy":
        raise ValueError(f"unknown backend {backend!r}")
    return _kernels_py.sweep(q, f, alpha, model, gamma, cfg, ghost, counters, REDUCED)
