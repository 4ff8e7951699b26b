import math

import numpy as np
import pytest

from wenoh.physics import Euler1D, conserved, physical_flux
from wenoh.riemann import GasState, VacuumError, exact_riemann, star_region

G = 1.4


def brute_star_pressure(left, right, gamma=G):
    """Plain bisection on the textbook pressure function, written out again here."""

    def f(p, rho, pk):
        c = math.sqrt(gamma * pk / rho)
        if p > pk:
            A = 2.0 / ((gamma + 1.0) * rho)
            B = (gamma - 1.0) / (gamma + 1.0) * pk
            return (p - pk) * math.sqrt(A / (p + B))
        return 2.0 * c / (gamma - 1.0) * ((p / pk) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)

    def total(p):
        return f(p, left[0], left[2]) + f(p, right[0], right[2]) + right[1] - left[1]

    lo, hi = 1e-12, 1e4
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if total(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


CASES = [
    ((1.0, 0.0, 1.0), (0.125, 0.0, 0.1)),
    ((1.0, 0.75, 1.0), (0.125, 0.0, 0.1)),
    ((0.445, 0.698, 3.528), (0.5, 0.0, 0.571)),
    ((1.0, -2.0, 0.4), (1.0, 2.0, 0.4)),
    ((1.0, 0.0, 1000.0), (1.0, 0.0, 0.01)),
]


@pytest.mark.parametrize("left,right", CASES)
def test_star_pressure_matches_bisection_oracle(left, right):
    star = star_region(left, right, G)
    assert star.p == pytest.approx(brute_star_pressure(left, right), rel=1e-10)


def test_sod_star_values():
    star = star_region((1.0, 0.0, 1.0), (0.125, 0.0, 0.1))
    assert star.p == pytest.approx(0.30313, abs=1e-5)
    assert star.u == pytest.approx(0.92745, abs=1e-5)
    assert star.rho_left == pytest.approx(0.42632, abs=1e-5)
    assert star.rho_right == pytest.approx(0.26557, abs=1e-5)


def test_symmetric_data_give_zero_velocity():
    star = star_region((1.0, 0.5, 1.0), (1.0, -0.5, 1.0))
    assert star.u == pytest.approx(0.0, abs=1e-14)
    assert star.p > 1.0


def test_equal_states_are_steady():
    xi = np.linspace(-2.0, 2.0, 41)
    w = exact_riemann((0.7, 0.2, 1.1), (0.7, 0.2, 1.1), G, xi)
    np.testing.assert_allclose(w, np.tile([0.7, 0.2, 1.1], (41, 1)), atol=1e-12)


def test_vacuum_rejected():
    with pytest.raises(VacuumError):
        star_region((1.0, -10.0, 1.0), (1.0, 10.0, 1.0))


def test_shock_satisfies_rankine_hugoniot():
    left, right = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
    star = star_region(left, right)
    # right shock speed from mass conservation across the jump
    s = star.rho_right * star.u / (star.rho_right - right[0])
    xi = np.array([s - 1e-9, s + 1e-9])
    behind, ahead = conserved(exact_riemann(left, right, G, xi), G)
    fb, fa = physical_flux(np.stack([behind, ahead]), Euler1D(G))
    np.testing.assert_allclose(fb - fa, s * (behind - ahead), atol=1e-8)


def test_rarefaction_fan_is_isentropic_and_continuous():
    left, right = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
    star = star_region(left, right)
    cl = GasState(*left).sound_speed(G)
    xi = np.linspace(-cl, star.u - math.sqrt(G * star.p / star.rho_left), 50)
    w = exact_riemann(left, right, G, xi)
    entropy = w[:, 2] / w[:, 0] ** G
    np.testing.assert_allclose(entropy, 1.0, rtol=1e-12)
    np.testing.assert_allclose(w[-1], [star.rho_left, star.u, star.p], rtol=1e-9)
