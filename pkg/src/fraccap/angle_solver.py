"""Solve the fractional Young's law ``f(s, theta) = 1 + sigma`` for the contact angle.

Here ``f(s, a) = sin(a)^s I(1, a, s) / I(1, pi/2, s)``.  ``f(s, .)`` is strictly
increasing and satisfies ``f(s, a) + f(s, pi - a) = 2``, so the angle obeys
``theta(s, -sigma) = pi - theta(s, sigma)`` and only ``sigma <= 0`` is solved for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize

from .kernel_integrals import HALF_PI, cone_integral, cone_integral_dalpha, cone_integral_ds
from .quadrature import DomainError, QuadratureSpec, resolve

SIGMA_MARGIN = 1e-6
S_ONE_DISPATCH = 1.0 - 1e-9
S_ZERO_DISPATCH = 1e-9
ANGLE_XTOL = 1e-13
MAX_ITER = 200


class BracketError(RuntimeError):
    """The Young-law residual failed to change sign on the search interval."""


@dataclass(frozen=True)
class AngleQuery:
    s: float
    sigma: float

    def __post_init__(self):
        if not (0.0 < self.s <= 1.0):
            raise DomainError(f"s must lie in (0, 1], got {self.s!r}")
        if not (abs(self.sigma) < 1.0 - SIGMA_MARGIN):
            raise DomainError(f"sigma out of range: need |sigma| < 1 - {SIGMA_MARGIN:g}, got {self.sigma!r}")


@dataclass(frozen=True)
class AngleSolution:
    theta: float
    residual: float
    iterations: int
    f_alpha: float

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)


def f_value(s: float, alpha: float, spec: QuadratureSpec | None = None) -> float:
    """``sin(alpha)^s I(1, alpha, s) / I(1, pi/2, s)``; equals ``1 - cos(alpha)`` at s = 1."""
    spec = resolve(spec)
    if alpha == HALF_PI:
        return 1.0
    return math.sin(alpha) ** s * cone_integral(alpha, s, spec) / cone_integral(HALF_PI, s, spec)


def f_dalpha(s: float, alpha: float, spec: QuadratureSpec | None = None) -> float:
    """Partial derivative of ``f`` in ``alpha``; equals ``sin(alpha)`` at s = 1."""
    spec = resolve(spec)
    sa, ca = math.sin(alpha), math.cos(alpha)
    num = (s * sa ** (s - 1.0) * ca * cone_integral(alpha, s, spec)
           + sa ** s * cone_integral_dalpha(alpha, s, spec))
    return num / cone_integral(HALF_PI, s, spec)


def f_ds(s: float, alpha: float, spec: QuadratureSpec | None = None) -> float:
    """Partial derivative of ``f`` in ``s`` by the quotient rule."""
    spec = resolve(spec)
    sa = math.sin(alpha)
    half = cone_integral(HALF_PI, s, spec)
    half_ds = cone_integral_ds(HALF_PI, s, spec)
    i_a = cone_integral(alpha, s, spec)
    i_a_ds = cone_integral_ds(alpha, s, spec)
    w = sa ** s
    return w * math.log(sa) * i_a / half + w * i_a_ds / half - w * i_a * half_ds / half ** 2


def _solve_nonpositive(s: float, sigma: float, spec: QuadratureSpec) -> tuple[float, int]:
    # sigma <= 0: the root lies in (0, pi/2] where f increases from 0 to 1
    target = 1.0 + sigma
    if sigma == 0.0:
        return HALF_PI, 0

    def residual(a):
        return f_value(s, a, spec) - target

    lo = 1e-4
    while residual(lo) > 0.0:
        lo *= 1e-2
        if lo < 1e-15:
            raise BracketError(f"no sign change below pi/2 for s={s!r}, sigma={sigma!r}")
    if residual(HALF_PI) < 0.0:
        raise BracketError(f"f(s, pi/2) < 1 + sigma for s={s!r}, sigma={sigma!r}")
    root, info = optimize.brentq(residual, lo, HALF_PI, xtol=ANGLE_XTOL, maxiter=MAX_ITER,
                                 full_output=True, disp=False)
    if not info.converged:
        raise RuntimeError(f"root finder did not converge: {info.flag}")
    return root, info.iterations


def solve_theta(s: float, sigma: float, spec: QuadratureSpec | None = None) -> AngleSolution:
    """Contact angle ``theta(s, sigma)`` in radians.

    ``s`` within 1e-9 of 1 (resp. 0) returns the limits ``arccos(-sigma)``
    (resp. ``pi (1 + sigma) / 2``) without root finding.
    """
    AngleQuery(s, sigma)
    spec = resolve(spec)
    if s >= S_ONE_DISPATCH:
        theta, iters = math.acos(-sigma), 0
    elif s <= S_ZERO_DISPATCH:
        theta, iters = HALF_PI * (1.0 + sigma), 0
    else:
        reduced, iters = _solve_nonpositive(s, -abs(sigma), spec)
        theta = reduced if sigma <= 0.0 else math.pi - reduced
    res = abs(f_value(s, theta, spec) - (1.0 + sigma))
    return AngleSolution(theta=theta, residual=res, iterations=iters, f_alpha=f_dalpha(s, theta, spec))


def dtheta_dsigma(s: float, sigma: float, spec: QuadratureSpec | None = None) -> float:
    """``d theta / d sigma = 1 / f_alpha(s, theta)``."""
    sol = solve_theta(s, sigma, spec)
    return 1.0 / sol.f_alpha


def dtheta_ds(s: float, sigma: float, spec: QuadratureSpec | None = None) -> float:
    """``d theta / d s = -f_s / f_alpha`` at the solved angle."""
    sol = solve_theta(s, sigma, spec)
    return -f_ds(s, sol.theta, spec) / sol.f_alpha
