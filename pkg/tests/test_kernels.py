import os
import subprocess
import sys

import numpy as np
import pytest

from wenoh import kernels
from wenoh.physics import conserved, eigensystem, field_wavespeeds, physical_flux, roe_average, Euler1D, Euler2D
from wenoh.reconstruction import reconstruct_interface, reconstruct_negative
from wenoh.weights import WeightParams

G = 4
BACKENDS = kernels.available_backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernel not built")


def smooth_pencils(P, n, model, seed=0):
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 1.0, n + 2 * G)
    prim = []
    for p in range(P):
        a, b = rng.uniform(0.1, 0.3, 2)
        rho = 1.0 + a * np.sin(2 * np.pi * x + p)
        u = 0.3 + b * np.cos(2 * np.pi * x)
        pr = 1.0 + 0.2 * np.exp(-((x - 0.5) ** 2) / 0.05)
        cols = [rho, u] + ([0.1 * np.sin(3 * x)] if model is Euler2D else []) + [pr]
        prim.append(np.stack(cols, -1))
    prim = np.array(prim)
    return conserved(prim, 1.4)


def shock_pencil(n, model):
    x = np.linspace(0.0, 1.0, n + 2 * G)
    rho = np.where(x < 0.5, 1.0, 0.125)
    pr = np.where(x < 0.5, 1.0, 0.1)
    cols = [rho, 0 * x] + ([0 * x] if model is Euler2D else []) + [pr]
    return conserved(np.stack(cols, -1)[None], 1.4)


def run_sweep(q, model, scheme, backend, dx=0.02, counters=None, workers=1):
    m = model()
    f = physical_flux(q, m)
    # one splitting speed per field for the whole sweep
    alpha = field_wavespeeds(q, m)
    cfg = kernels.KernelConfig.build(WeightParams(scheme=scheme), dx)
    mid = kernels.MODEL_EULER1D if model is Euler1D else kernels.MODEL_EULER2D
    return kernels.sweep(q, f, alpha, mid, 1.4, cfg, G, counters, workers, backend)


def scalar_reference(q, model, scheme, alpha, dx=0.02):
    """Per-interface path: Roe projection + scalar reconstruction per field."""
    m = model()
    f = physical_flux(q, m)
    n = q.shape[0] - 2 * G
    out = np.empty((n + 1, q.shape[1]))
    for i in range(n + 1):
        j = G - 1 + i
        es = eigensystem(roe_average(q[j], q[j + 1], 1.4), m)
        cq = q[j - 2:j + 4] @ es.L.T
        cf = f[j - 2:j + 4] @ es.L.T
        h = [
            reconstruct_interface(0.5 * (cf[:, k] + alpha[k] * cq[:, k]), scheme, dx=dx)
            + reconstruct_negative(0.5 * (cf[:, k] - alpha[k] * cq[:, k]), scheme, dx=dx)
            for k in range(q.shape[1])
        ]
        out[i] = es.R @ np.array(h)
    return out


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("scheme", ["js", "m", "z", "h"])
@pytest.mark.parametrize("model", [Euler1D, Euler2D])
def test_sweep_matches_scalar_reference(backend, scheme, model):
    q = np.concatenate([smooth_pencils(1, 24, model), shock_pencil(24, model)])
    got = run_sweep(q, model, scheme, backend)
    alpha = field_wavespeeds(q, model())
    for p in range(q.shape[0]):
        ref = scalar_reference(q[p], model, scheme, alpha)
        np.testing.assert_allclose(got[p], ref, rtol=1e-11, atol=1e-12)


@needs_cython
@pytest.mark.parametrize("scheme", ["js", "h"])
def test_backends_agree_with_identical_counters(scheme):
    q = np.concatenate([smooth_pencils(6, 60, Euler2D), shock_pencil(60, Euler2D)])
    c_np = np.zeros(kernels.NCOUNTERS, dtype=np.int64)
    c_cy = np.zeros(kernels.NCOUNTERS, dtype=np.int64)
    a = run_sweep(q, Euler2D, scheme, "numpy", counters=c_np)
    b = run_sweep(q, Euler2D, scheme, "cython", counters=c_cy)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-13)
    np.testing.assert_array_equal(c_np, c_cy)
    if scheme == "h":
        assert c_cy.sum() == 2 * q.shape[0] * 61 * 4


@needs_cython
def test_worker_count_does_not_change_results():
    q = smooth_pencils(16, 80, Euler2D, seed=3)
    ref = run_sweep(q, Euler2D, "h", "cython", workers=1)
    for w in (2, 4):
        c = np.zeros(kernels.NCOUNTERS, dtype=np.int64)
        np.testing.assert_array_equal(run_sweep(q, Euler2D, "h", "cython", workers=w, counters=c), ref)


def test_shape_of_output():
    q = smooth_pencils(3, 30, Euler1D)
    assert run_sweep(q, Euler1D, "h", "numpy").shape == (3, 31, 3)


def test_unknown_backend():
    with pytest.raises(ValueError):
        run_sweep(smooth_pencils(1, 10, Euler1D), Euler1D, "js", "fortran")


def test_pure_python_switch():
    env = dict(os.environ, WENOH_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import wenoh; print(wenoh.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"
