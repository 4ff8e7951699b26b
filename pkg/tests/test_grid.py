import numpy as np
import pytest

from wenoh.grid import (
    BoundaryConditions,
    ConfigurationError,
    DirichletInflow,
    DoubleMachBottom,
    DoubleMachTop,
    Outflow,
    Periodic,
    Reflective,
    build_grid,
    fill_ghosts,
)


def test_spacing_and_centers():
    g = build_grid([-1.0, 1.0], 20)
    assert g.dx == pytest.approx(0.1)
    assert g.centers()[0] == pytest.approx(-0.95)
    assert g.field_shape(3) == (28, 3)
    assert g.padded_centers()[0] == pytest.approx(-1.35)


def test_2d_layout_is_row_major_in_y():
    g = build_grid([[0.0, 4.0], [0.0, 1.0]], (40, 10))
    assert (g.dx, g.dy) == pytest.approx((0.1, 0.1))
    assert g.field_shape(4) == (18, 48, 4)
    assert g.interior(g.allocate(4)).shape == (10, 40, 4)


@pytest.mark.parametrize(
    "bounds,n,ghost",
    [([1.0, 0.0], 20, 4), ([0.0, 1.0], 7, 4), ([0.0, 1.0], 20, 3), ([[0, 1], [0, 1], [0, 1]], 10, 4)],
)
def test_invalid_grids_rejected(bounds, n, ghost):
    with pytest.raises(ConfigurationError):
        build_grid(bounds, n, ghost)


def test_periodic_and_outflow_1d():
    g = build_grid([0.0, 1.0], 10)
    u = g.allocate(1)
    g.interior(u)[:, 0] = np.arange(10.0)
    fill_ghosts(u, g, BoundaryConditions(Periodic(), Periodic()))
    np.testing.assert_array_equal(u[:4, 0], [6, 7, 8, 9])
    np.testing.assert_array_equal(u[-4:, 0], [0, 1, 2, 3])
    fill_ghosts(u, g, BoundaryConditions(Outflow(), Outflow()))
    np.testing.assert_array_equal(u[:4, 0], 0.0)
    np.testing.assert_array_equal(u[-4:, 0], 9.0)


def test_reflective_flips_normal_momentum():
    g = build_grid([0.0, 1.0], 8)
    q = g.allocate(3)
    g.interior(q)[:] = np.stack([np.arange(1.0, 9.0), np.arange(1.0, 9.0), np.full(8, 5.0)], axis=-1)
    fill_ghosts(q, g, BoundaryConditions(Reflective(), Reflective()))
    np.testing.assert_array_equal(q[3], [1.0, -1.0, 5.0])
    np.testing.assert_array_equal(q[0], [4.0, -4.0, 5.0])
    np.testing.assert_array_equal(q[-1], [5.0, -5.0, 5.0])


def test_dirichlet_and_2d_reflection_in_y():
    g = build_grid([[0.0, 1.0], [0.0, 1.0]], 8)
    q = g.allocate(4)
    g.interior(q)[:] = [1.0, 2.0, 3.0, 4.0]
    bc = BoundaryConditions(Outflow(), Outflow(), Reflective(), DirichletInflow((9.0, 0.0, 0.0, 9.0)))
    fill_ghosts(q, g, bc)
    np.testing.assert_array_equal(q[0, 5], [1.0, 2.0, -3.0, 4.0])
    np.testing.assert_array_equal(q[-1, 5], [9.0, 0.0, 0.0, 9.0])
    # corners are filled from the x ghosts
    np.testing.assert_array_equal(q[0, 0], [1.0, 2.0, -3.0, 4.0])


def test_double_mach_boundaries():
    g = build_grid([[0.0, 4.0], [0.0, 1.0]], (32, 8))
    q = g.allocate(4)
    post, pre = (8.0, 1.0, -1.0, 100.0), (1.4, 0.0, 0.0, 2.5)
    g.interior(q)[:] = pre
    top = DoubleMachTop(post, pre)
    bc = BoundaryConditions(Outflow(), Outflow(), DoubleMachBottom(post), top)
    fill_ghosts(q, g, bc, t=0.1)
    x = g.padded_centers(0)
    xs = top.shock_position(0.1, 1.0)
    assert xs == pytest.approx(1 / 6 + 3.0 / np.sqrt(3.0))
    np.testing.assert_array_equal(q[-1, x < xs, 0], 8.0)
    np.testing.assert_array_equal(q[-1, x > xs, 0], 1.4)
    np.testing.assert_array_equal(q[0, x <= 1 / 6, 0], 8.0)
    wall = x > 1 / 6
    np.testing.assert_array_equal(q[0, wall, 0], 1.4)


def test_unknown_kind_rejected():
    g = build_grid([0.0, 1.0], 10)
    with pytest.raises(ConfigurationError):
        fill_ghosts(g.allocate(1), g, BoundaryConditions("periodic", Periodic()))
    with pytest.raises(ConfigurationError):
        fill_ghosts(g.allocate(1), g, BoundaryConditions(Reflective(), Reflective()))
