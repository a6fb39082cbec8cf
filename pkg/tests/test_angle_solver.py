import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccap.angle_solver import (
    AngleQuery,
    dtheta_ds,
    dtheta_dsigma,
    f_dalpha,
    f_ds,
    f_value,
    solve_theta,
)
from fraccap.quadrature import DomainError

s_values = st.floats(0.02, 0.98)
sigmas = st.floats(-0.95, 0.95)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5])
def test_f_at_s1_is_one_minus_cos(alpha):
    assert f_value(1.0, alpha) == pytest.approx(1 - math.cos(alpha), rel=1e-14)
    assert f_dalpha(1.0, alpha) == pytest.approx(math.sin(alpha), rel=1e-12)


@given(s_values, st.floats(0.05, math.pi - 0.05))
@settings(max_examples=25, deadline=None)
def test_f_reflection(s, alpha):
    assert f_value(s, alpha) + f_value(s, math.pi - alpha) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("s,alpha", [(0.2, 0.7), (0.6, 1.9), (0.9, 1.2)])
def test_partial_derivatives_by_differences(s, alpha):
    h = 1e-6
    fa = (f_value(s, alpha + h) - f_value(s, alpha - h)) / (2 * h)
    fs = (f_value(s + h, alpha) - f_value(s - h, alpha)) / (2 * h)
    assert f_dalpha(s, alpha) == pytest.approx(fa, rel=1e-7)
    assert f_ds(s, alpha) == pytest.approx(fs, rel=1e-6, abs=1e-9)


@given(s_values, sigmas)
@settings(max_examples=30, deadline=None)
def test_young_residual(s, sigma):
    sol = solve_theta(s, sigma)
    assert 0 < sol.theta < math.pi
    assert abs(f_value(s, sol.theta) - (1 + sigma)) <= 1e-9
    assert sol.residual <= 1e-9


@given(s_values, sigmas)
@settings(max_examples=25, deadline=None)
def test_symmetry_in_sigma(s, sigma):
    assert solve_theta(s, -sigma).theta == pytest.approx(math.pi - solve_theta(s, sigma).theta, abs=1e-10)


@pytest.mark.parametrize("s", [0.05, 0.4, 0.95])
def test_zero_sigma_is_right_angle(s):
    assert solve_theta(s, 0.0).theta == math.pi / 2


@pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
def test_monotone_in_sigma(s):
    thetas = [solve_theta(s, sg).theta for sg in (-0.9, -0.5, -0.1, 0.1, 0.5, 0.9)]
    assert all(b > a for a, b in zip(thetas, thetas[1:]))


@pytest.mark.parametrize("s,sigma", [(0.3, -0.4), (0.7, 0.6), (0.5, 0.0)])
def test_implicit_derivatives(s, sigma):
    h = 1e-5
    d_sigma = (solve_theta(s, sigma + h).theta - solve_theta(s, sigma - h).theta) / (2 * h)
    d_s = (solve_theta(s + h, sigma).theta - solve_theta(s - h, sigma).theta) / (2 * h)
    assert dtheta_dsigma(s, sigma) == pytest.approx(d_sigma, rel=1e-6)
    assert dtheta_dsigma(s, sigma) > 0
    assert dtheta_ds(s, sigma) == pytest.approx(d_s, rel=1e-5, abs=1e-8)


def test_endpoint_dispatch():
    assert solve_theta(1.0, -0.5).theta == pytest.approx(math.pi / 3, rel=1e-15)
    assert solve_theta(1e-10, 0.5).theta == pytest.approx(0.75 * math.pi, rel=1e-15)
    assert solve_theta(1.0, -0.5).iterations == 0


def test_near_endpoints_approach_limits():
    for sigma in (-0.8, 0.4):
        assert abs(solve_theta(0.9999, sigma).theta - math.acos(-sigma)) < 1e-3
        assert abs(solve_theta(0.0001, sigma).theta - 0.5 * math.pi * (1 + sigma)) < 1e-3


@pytest.mark.parametrize("s", [0.02, 0.98])
def test_angle_sits_on_one_side_of_classical_angle_near_endpoints(s):
    # below the classical angle for hydrophilic sigma, above it for hydrophobic sigma
    for sigma in (-0.9, -0.5, -0.1):
        assert solve_theta(s, sigma).theta < math.acos(-sigma)
        assert solve_theta(s, -sigma).theta > math.acos(sigma)


def test_frozen_values():
    assert solve_theta(0.5, 0.5).theta == pytest.approx(2.189842853113926, abs=1e-11)
    assert solve_theta(0.3, -0.7).theta == pytest.approx(0.6017156184415307, abs=1e-11)
    assert solve_theta(0.9, 0.2).theta == pytest.approx(1.7785619687714704, abs=1e-11)
    assert solve_theta(0.5, 0.5).degrees == pytest.approx(math.degrees(2.189842853113926))


@pytest.mark.parametrize("s,sigma", [(0.0, 0.1), (1.2, 0.1), (0.5, 1.0), (0.5, -1.0), (0.5, 2.0)])
def test_rejects_out_of_range(s, sigma):
    with pytest.raises(DomainError):
        AngleQuery(s, sigma)
    with pytest.raises(DomainError):
        solve_theta(s, sigma)


def test_sigma_message():
    with pytest.raises(DomainError, match="sigma out of range"):
        solve_theta(0.5, 2.0)
