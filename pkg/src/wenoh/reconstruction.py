"""Scalar, per-interface WENO reconstruction.

This is the readable reference path.  The compute kernels in
:mod:`wenoh.kernels` evaluate the same formulas over whole pencils.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from wenoh.basis import CLASSICAL_D, BasisFallback, BasisKind, interface_coeffs, local_flux
from wenoh.tension import Thresholds, primitive_differences, select_tension, window_scale
from wenoh.weights import (
    Scheme,
    WeightParams,
    beta_JS,
    beta_L1,
    tau5,
    weights_H,
    weights_JS,
    weights_M,
    weights_Z,
)


def optimal_weights_for(
    window6, dx: float, thresholds: Thresholds = Thresholds(), stats: Counter | None = None
) -> np.ndarray:
    """Tension selection followed by the exponential optimal weights."""
    decision = select_tension(primitive_differences(window6), dx, thresholds, window_scale(window6))
    try:
        coeffs = interface_coeffs(decision.kind, decision.s2, dx)
    except BasisFallback:
        if stats is not None:
            stats["fallback"] += 1
        return CLASSICAL_D.copy()
    if stats is not None:
        stats[BasisKind(decision.kind).name.lower()] += 1
        if coeffs.substituted:
            stats["d_substituted"] += 1
    return coeffs.d


def reconstruct_interface(
    window,
    scheme: Scheme | str = Scheme.H,
    params: WeightParams | None = None,
    dx: float = 1.0,
    thresholds: Thresholds = Thresholds(),
    stats: Counter | None = None,
) -> float:
    """Upwind-biased flux at x_{j+1/2} from values on cells j-2..j+3.

    Only WENO-H reads the sixth value (tension selection); the other schemes
    accept a five-value window as well.
    """
    params = params or WeightParams(scheme=scheme)
    scheme = Scheme.parse(scheme)
    w = np.asarray(window, dtype=float)
    core = w[:5]
    fluxes = np.array([local_flux(core[k:k + 3], k) for k in range(3)])
    if scheme == Scheme.H:
        d = optimal_weights_for(w, dx, thresholds, stats)
        omega = weights_H(beta_L1(core, params.theta), tau5(core), d, dx, params.gamma)
    else:
        beta = beta_JS(core)
        weigh = {Scheme.JS: weights_JS, Scheme.M: weights_M, Scheme.Z: weights_Z}[scheme]
        omega = weigh(beta, CLASSICAL_D, params.eps_base)
    return float(np.dot(omega, fluxes))


def reconstruct_negative(window, *args, **kwargs) -> float:
    """Downwind-split flux at x_{j+1/2}; ``window`` runs over cells j-2..j+3.

    Mirror image of :func:`reconstruct_interface` about the interface.
    """
    return reconstruct_interface(np.asarray(window, dtype=float)[::-1], *args, **kwargs)
