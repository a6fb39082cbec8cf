import math

import pytest

from fraccap.asymptotics import (
    ExpansionCoefficients,
    Regime,
    expand_at_one,
    expand_at_zero,
    expansion,
    slope_check,
    young_numerator,
)
from fraccap.quadrature import DomainError
from fraccap.special_functions import xi


def test_young_numerator_is_odd_and_zero_at_origin():
    assert young_numerator(0.0) == 0.0
    for sg in (0.2, 0.7):
        assert young_numerator(-sg) == pytest.approx(-young_numerator(sg), rel=1e-14)


def test_coefficients_at_one():
    c = expand_at_one(-0.5)
    assert c.theta0 == pytest.approx(math.pi / 3)
    n = -math.log(2) + 1.5 * math.log(1.5) - 0.5 * math.log(0.5)
    assert c.slope == pytest.approx(-n / (2 * math.sqrt(0.75)))
    assert c(1.0) == c.theta0
    assert c.offset(0.9) == pytest.approx(0.1)


def test_coefficients_at_zero():
    c = expand_at_zero(0.4)
    theta0 = 0.7 * math.pi
    bracket = theta0 * math.log(math.cos(0.2 * math.pi)) - xi(theta0) + 1.4 * 0.5 * math.pi * math.log(2)
    assert c.theta0 == pytest.approx(theta0)
    assert c.slope == pytest.approx(-bracket, rel=1e-12)
    assert c(0.0) == c.theta0


@pytest.mark.parametrize("regime", list(Regime))
def test_zero_sigma_has_zero_slope(regime):
    assert expansion(regime, 0.0).slope == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("regime", list(Regime))
@pytest.mark.parametrize("sigma", [0.3, 0.8])
def test_slopes_antisymmetric(regime, sigma):
    assert expansion(regime, -sigma).slope == pytest.approx(-expansion(regime, sigma).slope, rel=1e-10)


@pytest.mark.parametrize("regime", list(Regime))
@pytest.mark.parametrize("sigma", [-0.6, 0.3])
def test_slope_check_converges_linearly(regime, sigma):
    rows = slope_check(regime, sigma)
    gaps = [r.gap for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-2
    # first-order remainder: gap / h roughly constant between the last two offsets
    assert gaps[-1] / rows[-1].h == pytest.approx(gaps[-2] / rows[-2].h, rel=0.2)


def test_slope_check_workers_do_not_change_rows():
    assert slope_check(Regime.AT_ONE, 0.5, workers=3) == slope_check(Regime.AT_ONE, 0.5)


@pytest.mark.parametrize("h", [(0.3,), (0.0,), (0.01, 0.1)])
def test_slope_check_rejects_offsets(h):
    with pytest.raises(DomainError):
        slope_check(Regime.AT_ONE, 0.2, h)


def test_sigma_domain():
    with pytest.raises(DomainError, match="sigma out of range"):
        expand_at_one(1.0)
    with pytest.raises(DomainError):
        expand_at_zero(-1.5)


def test_expansion_dataclass():
    c = ExpansionCoefficients(Regime.AT_ZERO, 0.1, 1.0, 2.0)
    assert c(0.25) == 1.5
