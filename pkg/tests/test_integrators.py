import numpy as np
import pytest

from wenoh.integrators import CFL, FixedPower, SolverDiverged, compute_dt, rk4_step, tvd_rk3_step


def decay(u, t):
    return -u


def test_rk3_matches_cubic_taylor_polynomial():
    h = 0.1
    got = tvd_rk3_step(np.array([1.0]), 0.0, h, decay)[0]
    assert got == pytest.approx(1 - h + h**2 / 2 - h**3 / 6, abs=1e-15)


def test_rk4_matches_quartic_taylor_polynomial():
    h = 0.1
    got = rk4_step(np.array([1.0]), 0.0, h, decay)[0]
    assert got == pytest.approx(1 - h + h**2 / 2 - h**3 / 6 + h**4 / 24, abs=1e-15)


@pytest.mark.parametrize("step,order", [(tvd_rk3_step, 3), (rk4_step, 4)])
def test_time_dependent_convergence(step, order):
    # u' = -t u, u(0) = 1; pure quadrature (u' = f(t)) would hide RK3's order
    errs = []
    for n in (20, 40):
        u, t, h = np.array([1.0]), 0.0, 1.0 / n
        for _ in range(n):
            u = step(u, t, h, lambda v, s: -s * v)
            t += h
        errs.append(abs(u[0] - np.exp(-0.5)))
    assert np.log2(errs[0] / errs[1]) == pytest.approx(order, abs=0.3)


def test_non_finite_stage_raises():
    with pytest.raises(SolverDiverged, match="stage"):
        rk4_step(np.array([1.0]), 0.0, 0.1, lambda u, t: u * np.nan)


def test_fixed_power_dt():
    law = FixedPower()
    assert law.steps(0.01, 1.0) == 1000
    assert compute_dt((9.0,), (0.01,), law, 0.0, 1.0) == pytest.approx(1e-3)
    # 1/0.03**1.5 = 192.45 is rounded up to 193 equal steps
    assert compute_dt((1.0,), (0.03,), law, 0.0, 1.0) == pytest.approx(1.0 / 193)


def test_cfl_dt_examples():
    assert compute_dt((2.0,), (0.1,), CFL(0.5), 0.0, 1.0) == pytest.approx(0.025)
    assert compute_dt((1.0, 3.0), (0.1, 0.1), CFL(0.4), 0.0, 1.0) == pytest.approx(0.01)
    # final step lands exactly on t_final
    assert compute_dt((2.0,), (0.1,), CFL(0.5), 0.99, 1.0) == pytest.approx(0.01)
    with pytest.raises(ValueError):
        CFL(0.0)
