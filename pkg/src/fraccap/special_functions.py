"""Closed-form auxiliary functions for the contact-angle expansions.

Trigonometric quotients are always formed from ``sin`` and ``cos`` so that
``t = pi/2`` is regular and ``t = 0`` is a removable point.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .quadrature import DomainError, QuadratureError, QuadratureSpec, resolve

HALF_PI = 0.5 * math.pi
LOG2 = math.log(2.0)
XI_MARGIN = 1e-6
H_MARGIN = 1e-8

#: ``Xi(pi/2) = (pi/2) log 2``
XI_HALF_PI = HALF_PI * LOG2


def t_cot_t(t):
    """``t cos t / sin t`` with the removable value 1 at ``t = 0``."""
    t = np.asarray(t, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(t == 0.0, 1.0, t * np.cos(t) / np.sin(t))
    return out if out.ndim else float(out)


def _integrate(func, a, b, spec: QuadratureSpec) -> float:
    value, err, *rest = integrate.quad(func, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                                       limit=spec.max_subdivisions, full_output=1)
    if len(rest) > 1 and not spec.accepts(value, err):
        raise QuadratureError(rest[1])
    return value


def xi(alpha: float, spec: QuadratureSpec | None = None) -> float:
    """``Xi(alpha) = int_0^alpha t / tan t dt`` for ``0 <= alpha <= pi - 1e-6``.

    Past ``pi/2`` the logarithmic growth toward ``pi`` is split off exactly:
    ``Xi(a) = Xi(pi/2) + pi log sin a + int_{pi/2}^a (t - pi) cot t dt``.
    """
    if not (0.0 <= alpha <= math.pi - XI_MARGIN):
        raise DomainError(f"xi is defined on [0, pi - {XI_MARGIN:g}], got {alpha!r}")
    spec = resolve(spec)
    if alpha == 0.0:
        return 0.0
    if alpha <= HALF_PI:
        return _integrate(lambda t: t_cot_t(t), 0.0, alpha, spec)
    base = _integrate(lambda t: t_cot_t(t), 0.0, HALF_PI, spec)
    regular = _integrate(lambda t: (t - math.pi) * math.cos(t) / math.sin(t), HALF_PI, alpha, spec)
    return base + math.pi * math.log(math.sin(alpha)) + regular


def lemma_h(a: float) -> float:
    """``h(a) = (2a(1 - log 2 + log(a+1)) - 2) / (a^2 - 1)``, the log-weighted radial integral at s=1.

    Evaluated through ``x = 1 - a`` as ``(2x - 2a log1p(-x/2)) / (x (2 - x))``, whose
    numerator has no cancellation; ``a = 1`` returns the limit 3/2.
    """
    if not (-1.0 + H_MARGIN <= a <= 1.0):
        raise DomainError(f"h(a) requires -1 + {H_MARGIN:g} <= a <= 1, got {a!r}")
    x = 1.0 - a
    if x == 0.0:
        return 1.5
    return (2.0 * x - 2.0 * a * math.log1p(-0.5 * x)) / (x * (2.0 - x))


def lemma_H(alpha: float) -> float:
    """``H(alpha) = (4(1 - cos a) + 2(log(cos a + 1) - log 2)) / sin a`` on ``(0, pi/2]``.

    Written with half-angle identities; ``H(a) ~ 1.5 a`` as ``a -> 0``.
    """
    if not (0.0 < alpha <= HALF_PI):
        raise DomainError(f"H(alpha) requires 0 < alpha <= pi/2, got {alpha!r}")
    sh2 = math.sin(0.5 * alpha) ** 2
    return (8.0 * sh2 + 2.0 * math.log1p(-sh2)) / math.sin(alpha)


def kappa1_at_zero(t: float) -> float:
    """``lim_{s->0} [radial_inner(t, s) - 1/s] = -t / tan t``; returns the limit -1 at t = 0."""
    if not (0.0 <= t <= HALF_PI):
        raise DomainError(f"kappa1 at s=0 is tabulated on [0, pi/2], got {t!r}")
    return -t_cot_t(t)


def kappa2_at_zero(alpha: float, spec: QuadratureSpec | None = None) -> float:
    """``lim_{s->0} [I(1, alpha, s) - 2 alpha / s] = -2 Xi(alpha)``."""
    if not (0.0 <= alpha <= HALF_PI):
        raise DomainError(f"kappa2 at s=0 is tabulated on [0, pi/2], got {alpha!r}")
    return -2.0 * xi(alpha, spec)


def _check_t(t: float) -> None:
    if not (0.0 < t < math.pi):
        raise DomainError(f"t must lie in (0, pi), got {t!r}")


def phi_psi(r: float, t: float) -> tuple[float, float]:
    """The primitives ``phi(r, t)`` and ``psi(r, t) = log r - phi(r, t)``.

    ``d phi/dr = (2 cos t + 1/r) / D`` and ``d psi/dr = r / D`` with
    ``D = r^2 + 2 r cos t + 1``.  At ``r = 0`` phi is ``-inf`` and psi is finite.
    """
    _check_t(t)
    if r < 0:
        raise DomainError(f"r must be non-negative, got {r!r}")
    ct, st = math.cos(t), math.sin(t)
    arc = math.atan((ct + r) / st) * ct / st
    d = r * r + 2.0 * r * ct + 1.0
    psi = 0.5 * math.log(d) - arc
    if r == 0.0:
        return -math.inf, psi
    return arc - 0.5 * math.log(d / (r * r)), psi


def phi_at_infinity(t: float) -> float:
    """``lim_{r->inf} phi(r, t) = pi cos t / (2 sin t)``."""
    _check_t(t)
    return HALF_PI * math.cos(t) / math.sin(t)


def kappa0_at_zero(t: float) -> float:
    """``int_1^inf [(1 + 2 cos t / r + 1/r^2)^-1 - 1] / r dr = phi(1, t) - phi(inf, t)``."""
    return phi_psi(1.0, t)[0] - phi_at_infinity(t)
