import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wenoh.basis import S2_TRIG_MIN, BasisKind
from wenoh.tension import (
    POLYNOMIAL,
    PrimitiveDifferences,
    Thresholds,
    primitive_differences,
    select_tension,
    window_scale,
)


def cell_averages(H, center, dx):
    """Averages of H' over cells j-2..j+3 around the interface at ``center``."""
    edges = center + dx * np.arange(-3, 4)
    return (H(edges[1:]) - H(edges[:-1])) / dx


def decide(window, dx, **kw):
    return select_tension(primitive_differences(window), dx, Thresholds(**kw), window_scale(window))


def test_constant_window_has_zero_differences():
    assert primitive_differences([3.0] * 6) == (0.0, 0.0, 0.0)
    assert decide([3.0] * 6, 0.1) == POLYNOMIAL


def test_cubic_data_annihilated_by_higher_differences():
    x = np.arange(6.0)
    D4, D5, D6 = primitive_differences(0.3 * x**3 - x + 2.0)
    assert D4 == pytest.approx(6 * 0.3)
    assert abs(D5) < 1e-14 and D6 == 0.0


@pytest.mark.parametrize("deg", [0, 1, 2, 3, 4])
def test_low_degree_data_select_polynomial(deg):
    x = np.linspace(-1.0, 1.0, 6)
    assert decide(x**deg + 0.5, 0.4).kind == BasisKind.POLYNOMIAL


def test_exponential_ratio_example():
    dx = 0.1
    w = np.exp(dx * (np.arange(6) - 2.5))
    D4, D5, D6 = primitive_differences(w)
    # Delta^5 f_0 / Delta^3 f_1 for f = e^x is (2 sinh(dx/2))^2
    assert D6 / D4 == pytest.approx(4.0 * math.sinh(dx / 2) ** 2, rel=1e-8)


@pytest.mark.parametrize("center", [0.0, 0.4, -1.3])
def test_exp_data_select_hyperbolic_with_unit_tension(center):
    dx = 0.05
    dec = decide(cell_averages(np.exp, center, dx), dx)
    assert dec.kind == BasisKind.HYPERBOLIC_C1
    assert 0.9 <= dec.s2 / dx**2 <= 1.1


@pytest.mark.parametrize("center", [0.3, 1.0, 2.2])
def test_cos_data_select_trigonometric(center):
    dx = 0.05
    dec = decide(cell_averages(np.sin, center, dx), dx)
    assert dec.kind == BasisKind.TRIGONOMETRIC_C1
    assert -1.1 <= dec.s2 / dx**2 <= -0.9


def test_estimator_converges_under_refinement():
    # past dx ~ 0.0125 the sixth difference drops under the zero threshold
    resid = []
    for k in range(3):
        dx = 0.1 / 2**k
        dec = decide(cell_averages(np.exp, 0.7, dx), dx)
        resid.append(abs(dec.s2 / dx**2 - 1.0))
    # truncation error of the ratio is O(dx^2)
    assert resid[0] / resid[1] > 3.5 and resid[1] / resid[2] > 3.5


def test_c2_branch_when_fourth_difference_vanishes():
    diffs = PrimitiveDifferences(0.0, 2.0e-3, 4.0e-6)
    dec = select_tension(diffs, 0.1)
    assert dec.kind == BasisKind.HYPERBOLIC_C2
    assert dec.s2 == pytest.approx(0.1 * 4.0e-6 / 2.0e-3)
    dec = select_tension(PrimitiveDifferences(0.0, 2.0e-3, -4.0e-6), 0.1)
    assert dec.kind == BasisKind.TRIGONOMETRIC_C2


def test_only_sixth_difference_gives_polynomial():
    assert select_tension(PrimitiveDifferences(0.0, 0.0, 1.0), 0.1) == POLYNOMIAL


def test_clamps():
    dec = select_tension(PrimitiveDifferences(1e-3, 0.0, 5.0), 0.1)
    assert dec.s2 == 1.0 and dec.kind == BasisKind.HYPERBOLIC_C1
    dec = select_tension(PrimitiveDifferences(1e-3, 0.0, -5.0), 0.1)
    assert dec.s2 == pytest.approx(S2_TRIG_MIN) and dec.kind == BasisKind.TRIGONOMETRIC_C1
    dec = select_tension(PrimitiveDifferences(1e-3, 0.0, 5.0), 0.1, Thresholds(s2_max=0.2))
    assert dec.s2 == 0.2


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_non_finite_input_falls_back(bad):
    assert select_tension(PrimitiveDifferences(bad, 1.0, 1.0), 0.1) == POLYNOMIAL
    assert select_tension(PrimitiveDifferences(1.0, 1.0, bad), 0.1) == POLYNOMIAL


def test_thresholds_validated():
    with pytest.raises(ValueError):
        Thresholds(eps_zero=0.0)
    with pytest.raises(ValueError):
        Thresholds(s2_max=5.0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-1.0, 1.0), min_size=3, max_size=3),
    st.floats(1e-3, 1e3),
)
def test_scale_invariance(d, c):
    diffs = PrimitiveDifferences(*d)
    th = Thresholds(eps_zero=1e-12)
    a = select_tension(diffs, 0.1, th)
    b = select_tension(PrimitiveDifferences(*(c * v for v in d)), 0.1, th, scale=c)
    assert a.kind == b.kind
    assert a.s2 == pytest.approx(b.s2, rel=1e-12, abs=1e-300)
