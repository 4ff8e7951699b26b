import math

import numpy as np
import pytest

from wenoh.grid import BoundaryConditions, Outflow, Periodic, build_grid
from wenoh.physics import (
    Advection,
    Euler1D,
    Euler2D,
    NonPhysicalState,
    SpatialOperator,
    check_physical,
    conserved,
    eigensystem,
    field_wavespeeds,
    lf_split,
    max_wavespeed,
    physical_flux,
    primitive,
    roe_average,
)
from wenoh.weights import WeightParams


def numerical_jacobian(q, model, direction):
    m = q.size
    J = np.empty((m, m))
    for k in range(m):
        h = 1e-6 * max(1.0, abs(q[k]))
        e = np.zeros(m)
        e[k] = h
        J[:, k] = (physical_flux(q + e, model, direction) - physical_flux(q - e, model, direction)) / (2 * h)
    return J


def test_flux_examples():
    q = conserved(np.array([1.0, 2.0, 1.0]), 1.4)
    np.testing.assert_allclose(q, [1.0, 2.0, 4.5])
    np.testing.assert_allclose(physical_flux(q, Euler1D()), [2.0, 5.0, 11.0])
    q2 = conserved(np.array([2.0, 1.0, -1.0, 1.0]), 1.4)
    np.testing.assert_allclose(physical_flux(q2, Euler2D(), 1), [-2.0, -2.0, 3.0, -(q2[3] + 1.0)])
    np.testing.assert_allclose(physical_flux(np.array([3.0]), Advection(-2.0)), [-6.0])


def test_primitive_roundtrip():
    w = np.array([[0.5, -0.3, 0.2, 2.0], [1.2, 1.0, 0.0, 0.1]])
    np.testing.assert_allclose(primitive(conserved(w, 1.4), 1.4), w, atol=1e-15)


def test_lf_split_examples():
    fp, fm = lf_split(np.array([2.0]), np.array([1.0]), 3.0)
    assert (fp[0], fm[0]) == (2.5, -0.5)
    with pytest.raises(ValueError):
        lf_split(np.array([1.0]), np.array([1.0]), 0.0)


def test_wavespeeds_sod():
    gamma = 1.4
    q = conserved(np.array([[1.0, 0.75, 1.0], [0.125, 0.0, 0.1]]), gamma)
    assert max_wavespeed(q, Euler1D()) == pytest.approx(0.75 + math.sqrt(1.4), abs=1e-12)
    assert max_wavespeed(q, Euler1D()) == pytest.approx(1.9332, abs=1e-4)
    still = conserved(np.array([[1.0, 0.0, 1.0]]), gamma)
    assert max_wavespeed(still, Euler1D()) == pytest.approx(math.sqrt(1.4))
    np.testing.assert_allclose(field_wavespeeds(q, Euler1D()), [math.sqrt(1.12), 0.75, 0.75 + math.sqrt(1.4)])


@pytest.mark.parametrize(
    "model,prim,direction",
    [
        (Euler1D(), [1.3, 0.4, 2.0], 0),
        (Euler2D(), [0.8, -0.5, 0.7, 1.5], 0),
        (Euler2D(), [0.8, -0.5, 0.7, 1.5], 1),
    ],
)
def test_eigensystem_diagonalizes_jacobian(model, prim, direction):
    q = conserved(np.array(prim), model.gamma)
    es = eigensystem(roe_average(q, q, model.gamma), model, direction)
    np.testing.assert_allclose(es.L @ es.R, np.eye(model.ncomp), atol=1e-13)
    A = numerical_jacobian(q, model, direction)
    np.testing.assert_allclose(es.R @ np.diag(es.eigenvalues) @ es.L, A, atol=1e-7)


def test_roe_average_of_different_states():
    qL = conserved(np.array([1.0, 0.0, 1.0]), 1.4)
    qR = conserved(np.array([4.0, 1.0, 1.0]), 1.4)
    avg = roe_average(qL, qR, 1.4)
    assert avg.u == pytest.approx(2.0 / 3.0)


def test_check_physical():
    check_physical(conserved(np.array([[1.0, 0.0, 1.0]]), 1.4), Euler1D())
    with pytest.raises(NonPhysicalState, match="cell"):
        check_physical(np.array([[1.0, 0.0, -1.0]]), Euler1D())
    with pytest.raises(NonPhysicalState):
        check_physical(np.array([[np.nan]]), Advection())


@pytest.mark.parametrize("scheme", ["js", "h"])
def test_constant_state_has_zero_rhs(scheme):
    g = build_grid([[0.0, 1.0], [0.0, 1.0]], 12)
    q = g.allocate(4)
    g.interior(q)[:] = conserved(np.array([1.2, 0.3, -0.4, 2.0]), 1.4)
    op = SpatialOperator(g, Euler2D(), BoundaryConditions.uniform(Outflow()), WeightParams(scheme=scheme))
    np.testing.assert_allclose(g.interior(op(q, 0.0)), 0.0, atol=1e-13)


@pytest.mark.parametrize("scheme", ["js", "h"])
def test_periodic_rhs_is_conservative(scheme):
    g = build_grid([0.0, 1.0], 40)
    x = g.centers()
    q = g.allocate(3)
    g.interior(q)[:] = conserved(np.stack([1 + 0.2 * np.sin(2 * np.pi * x), 0.5 + 0 * x, 1 + 0 * x], -1), 1.4)
    op = SpatialOperator(g, Euler1D(), BoundaryConditions.uniform(Periodic()), WeightParams(scheme=scheme))
    np.testing.assert_allclose(g.interior(op(q, 0.0)).sum(axis=0), 0.0, atol=1e-12)


def test_gravity_source():
    g = build_grid([[0.0, 1.0], [0.0, 1.0]], 8)
    q = g.allocate(4)
    g.interior(q)[:] = [2.0, 0.0, 1.5, 5.0]
    op = SpatialOperator(g, Euler2D(gravity=True), BoundaryConditions.uniform(Outflow()))
    rhs = g.interior(op(q, 0.0))
    np.testing.assert_allclose(rhs[..., 2], 2.0, atol=1e-12)
    np.testing.assert_allclose(rhs[..., 3], 1.5, atol=1e-12)


def test_gamma_validated():
    with pytest.raises(ValueError):
        Euler1D(gamma=1.0)
