"""First-order expansions of the contact angle near ``s = 1`` and ``s = 0``."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .angle_solver import SIGMA_MARGIN, solve_theta
from .quadrature import DomainError, QuadratureSpec
from .special_functions import XI_HALF_PI, xi

DEFAULT_OFFSETS = (0.1, 0.03, 0.01, 0.003, 0.001)


class Regime(enum.Enum):
    AT_ONE = "at1"
    AT_ZERO = "at0"


@dataclass(frozen=True)
class ExpansionCoefficients:
    """``theta ~ theta0 + slope * (1 - s)`` (AT_ONE) or ``theta0 + slope * s`` (AT_ZERO)."""

    regime: Regime
    sigma: float
    theta0: float
    slope: float

    def offset(self, s: float) -> float:
        return 1.0 - s if self.regime is Regime.AT_ONE else s

    def __call__(self, s: float) -> float:
        return self.theta0 + self.slope * self.offset(s)


@dataclass(frozen=True)
class SlopeRow:
    h: float
    empirical_slope: float
    analytic_slope: float

    @property
    def gap(self) -> float:
        return abs(self.empirical_slope - self.analytic_slope)


def _check_sigma(sigma: float) -> None:
    if not (abs(sigma) < 1.0 - SIGMA_MARGIN):
        raise DomainError(f"sigma out of range: need |sigma| < 1 - {SIGMA_MARGIN:g}, got {sigma!r}")


def young_numerator(sigma: float) -> float:
    """``2 sigma log 2 + (1 - sigma) log(1 - sigma) - (1 + sigma) log(1 + sigma)``."""
    return 2.0 * sigma * math.log(2.0) + (1.0 - sigma) * math.log1p(-sigma) - (1.0 + sigma) * math.log1p(sigma)


def expand_at_one(sigma: float) -> ExpansionCoefficients:
    _check_sigma(sigma)
    slope = -young_numerator(sigma) / (2.0 * math.sqrt(1.0 - sigma * sigma))
    return ExpansionCoefficients(Regime.AT_ONE, sigma, math.acos(-sigma), slope)


def expand_at_zero(sigma: float, spec: QuadratureSpec | None = None) -> ExpansionCoefficients:
    _check_sigma(sigma)
    theta0 = 0.5 * math.pi * (1.0 + sigma)
    bracket = (theta0 * math.log(math.cos(0.5 * math.pi * sigma))
               - xi(theta0, spec) + (1.0 + sigma) * XI_HALF_PI)
    return ExpansionCoefficients(Regime.AT_ZERO, sigma, theta0, -bracket)


def expansion(regime: Regime, sigma: float, spec: QuadratureSpec | None = None) -> ExpansionCoefficients:
    return expand_at_one(sigma) if regime is Regime.AT_ONE else expand_at_zero(sigma, spec)


def slope_check(regime: Regime, sigma: float, h_values=DEFAULT_OFFSETS,
                spec: QuadratureSpec | None = None, workers: int = 1) -> list[SlopeRow]:
    """Compare one-sided difference quotients of the solved angle with the analytic slope.

    Rows come back in the order of ``h_values`` whatever the worker count.
    """
    h_values = [float(h) for h in h_values]
    if any(not (0.0 < h <= 0.2) for h in h_values):
        raise DomainError("offsets must lie in (0, 0.2]")
    if h_values != sorted(h_values, reverse=True):
        raise DomainError("offsets must be sorted in descending order")
    coeffs = expansion(regime, sigma, spec)

    def row(h):
        s = 1.0 - h if regime is Regime.AT_ONE else h
        theta = solve_theta(s, sigma, spec).theta
        return SlopeRow(h, (theta - coeffs.theta0) / h, coeffs.slope)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, h_values))
    return [row(h) for h in h_values]
