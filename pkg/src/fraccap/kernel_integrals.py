"""Interaction integrals between a point and a planar cone.

For a cone of half-opening ``alpha`` with apex at the origin and axis ``-e2``,

    I(1, alpha, s) = 2 * int_0^alpha int_0^inf r (r^2 + 2 r cos t + 1)^(-(2+s)/2) dr dt

is the interaction of the unit point ``e2`` with the cone under the kernel
``|z|^(-2-s)``.  Radial integrals are split at ``c = spec.far_field_cut``; the far
piece is rewritten with ``u = c / r`` so that it becomes

    c^(-s) * int_0^1 u^(s-1) (1 + 2 u cos t / c + u^2 / c^2)^(-(2+s)/2) du,

which is finite for every ``s > 0`` and needs no truncation.

Two independent routes are provided: scalar adaptive QUADPACK integration
(:func:`radial_inner`, :func:`log_radial_inner`) and a vectorised tensor Gauss rule
with leading-singularity subtraction that backs :func:`cone_integral` and
:func:`cone_integral_ds`.  Cones wider than a half-plane are reduced to narrower
ones with the exact reflection identity

    I(1, alpha, s) + I(1, pi - alpha, s) = 2 I(1, pi/2, s) / sin(alpha)^s.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .quadrature import (
    DomainError,
    QuadratureError,
    QuadratureSpec,
    gauss_on,
    graded_panels_for,
    graded_rule,
    resolve,
)
from .special_functions import lemma_H

HALF_PI = 0.5 * math.pi
ALPHA_MARGIN = 1e-6

# (outer nodes, head nodes, nodes per graded tail panel); consecutive levels are compared
_LEVELS = ((20, 20, 12), (28, 28, 16), (40, 40, 20), (56, 56, 24), (80, 80, 32), (112, 112, 40))


@dataclass(frozen=True)
class ConeParams:
    alpha: float
    s: float

    def __post_init__(self):
        if not (0.0 < self.alpha < math.pi):
            raise DomainError(f"alpha must lie in (0, pi), got {self.alpha!r}")
        if self.alpha > math.pi - ALPHA_MARGIN:
            raise DomainError(f"alpha must not exceed pi - {ALPHA_MARGIN:g}")
        if not (0.0 < self.s <= 1.0):
            raise DomainError(f"s must lie in (0, 1], got {self.s!r}")


def _check_t_s(t: float, s: float) -> None:
    if not (0.0 <= t < math.pi):
        raise DomainError(f"t must lie in [0, pi), got {t!r}")
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0, 1], got {s!r}")


def _quad(func, a, b, spec: QuadratureSpec, **kw) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(func, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                             limit=spec.max_subdivisions, full_output=1, **kw)
    value, err = out[0], out[1]
    if len(out) > 3 and not spec.accepts(value, err):
        raise QuadratureError(f"quadrature on [{a}, {b}] stalled: {out[3]!r} (error {err:.3g})")
    return value


def _head_near_pi(t: float, s: float, c: float, spec: QuadratureSpec, with_log: bool) -> float:
    """Head integral on [0, c] for t in (pi/2, pi).

    With ``D = (r - r0)^2 + w^2``, ``r0 = -cos t``, ``w = sin t`` and ``r = r0 + w tan(phi)``
    the peak of width ``w`` at ``r0`` becomes a bounded integrand; the odd part integrates
    in closed form.
    """
    r0, w = -math.cos(t), math.sin(t)
    phi1, phi2 = math.atan(-r0 / w), math.atan((c - r0) / w)
    v1, v2 = w / math.hypot(w, r0), w / math.hypot(w, c - r0)
    even = _quad(lambda p: math.cos(p) ** s, phi1, phi2, spec)
    odd = (v1 ** s - v2 ** s) / s
    if not with_log:
        return w ** (-1.0 - s) * (r0 * even + w * odd)
    even_log = _quad(lambda p: math.cos(p) ** s * math.log(math.cos(p)), phi1, phi2, spec)

    def odd_log_primitive(v):
        return -v ** s * math.log(v) / s + v ** s / (s * s)

    odd_log = odd_log_primitive(v2) - odd_log_primitive(v1)
    lw2 = 2.0 * math.log(w)
    return w ** (-1.0 - s) * (lw2 * (r0 * even + w * odd) - 2.0 * (r0 * even_log + w * odd_log))


def radial_inner(t: float, s: float, spec: QuadratureSpec | None = None) -> float:
    """``int_0^inf r (r^2 + 2 r cos t + 1)^(-(2+s)/2) dr`` by adaptive quadrature."""
    _check_t_s(t, s)
    spec = resolve(spec)
    c = spec.far_field_cut
    ct = math.cos(t)
    e = -(2.0 + s) / 2.0

    if t > HALF_PI:
        head = _head_near_pi(t, s, c, spec, with_log=False)
    else:
        head = _quad(lambda r: r * (r * r + 2.0 * r * ct + 1.0) ** e, 0.0, c, spec, points=[1.0])
    tail = _quad(lambda u: (1.0 + 2.0 * u * ct / c + u * u / (c * c)) ** e, 0.0, 1.0, spec,
                 weight="alg", wvar=(s - 1.0, 0.0))
    return head + c ** (-s) * tail


def log_radial_inner(t: float, s: float, spec: QuadratureSpec | None = None) -> float:
    """``int_0^inf log(D) r D^(-(2+s)/2) dr`` with ``D = r^2 + 2 r cos t + 1``."""
    _check_t_s(t, s)
    spec = resolve(spec)
    c = spec.far_field_cut
    ct = math.cos(t)
    e = -(2.0 + s) / 2.0
    logc2 = 2.0 * math.log(c)

    def head_f(r):
        d = r * r + 2.0 * r * ct + 1.0
        return math.log(d) * r * d ** e

    def smooth_f(u):
        g = 1.0 + 2.0 * u * ct / c + u * u / (c * c)
        return g ** e * (logc2 + math.log(g))

    if t > HALF_PI:
        head = _head_near_pi(t, s, c, spec, with_log=True)
    else:
        head = _quad(head_f, 0.0, c, spec, points=[1.0])
    tail = _quad(smooth_f, 0.0, 1.0, spec, weight="alg", wvar=(s - 1.0, 0.0))
    tail_log = _quad(lambda u: (1.0 + 2.0 * u * ct / c + u * u / (c * c)) ** e, 0.0, 1.0, spec,
                     weight="alg-loga", wvar=(s - 1.0, 0.0))
    return head + c ** (-s) * (tail - 2.0 * tail_log)


def _radial_table(t: np.ndarray, s: float, c: float, n_head: int, n_tail: int,
                  with_log: bool) -> np.ndarray:
    """Radial integrals for an array of ``t`` in [0, pi/2] with a fixed Gauss rule.

    Returns the plain integral, or the log-weighted one when ``with_log``.
    """
    ct = np.cos(t)[:, None]
    e = -(2.0 + s) / 2.0

    r, wr = gauss_on(0.0, c, n_head)
    d = r * r + 2.0 * r * ct + 1.0
    head_kernel = r * d ** e
    if with_log:
        head_kernel = head_kernel * np.log(d)
    head = head_kernel @ wr

    u, wu = graded_rule(n_tail, graded_panels_for(s))
    x = 2.0 * u * ct / c + (u / c) ** 2
    log_g = np.log1p(x)
    fm1 = np.expm1(e * log_g)
    us = u ** (s - 1.0)
    if with_log:
        logc2 = 2.0 * math.log(c)
        lead = logc2 / s + 2.0 / (s * s)
        rem = us * (fm1 * (logc2 - 2.0 * np.log(u)) + (1.0 + fm1) * log_g)
    else:
        lead = 1.0 / s
        rem = us * fm1
    tail = lead + rem @ wu
    return head + c ** (-s) * tail


def _cone_fixed(alpha: float, s: float, c: float, level: tuple[int, int, int], with_log: bool) -> float:
    n_out, n_head, n_tail = level
    t, wt = gauss_on(0.0, alpha, n_out)
    return float(np.dot(wt, _radial_table(t, s, c, n_head, n_tail, with_log)))


def _cone_converged(alpha: float, s: float, spec: QuadratureSpec, with_log: bool) -> float:
    c = spec.far_field_cut
    prev = _cone_fixed(alpha, s, c, _LEVELS[0], with_log)
    for level in _LEVELS[1:]:
        if level[0] > spec.max_subdivisions:
            break
        cur = _cone_fixed(alpha, s, c, level, with_log)
        if spec.accepts(cur, cur - prev):
            return cur
        prev = cur
    raise QuadratureError(f"cone integral did not converge at alpha={alpha!r}, s={s!r}")


@lru_cache(maxsize=4096)
def _half_plane(s: float, spec: QuadratureSpec) -> float:
    return 2.0 * _cone_converged(HALF_PI, s, spec, with_log=False)


@lru_cache(maxsize=4096)
def _half_plane_ds(s: float, spec: QuadratureSpec) -> float:
    return -_cone_converged(HALF_PI, s, spec, with_log=True)


def half_plane_integral(s: float, spec: QuadratureSpec | None = None) -> float:
    """``I(1, pi/2, s)``: the interaction of a unit-distance point with a half-plane.

    Memoised per ``(s, spec)`` because every evaluation of ``f(s, alpha)`` divides by it.
    """
    return cone_integral(HALF_PI, s, spec)


def cone_integral(alpha: float, s: float, spec: QuadratureSpec | None = None, *,
                  closed_form: bool = True) -> float:
    """``I(1, alpha, s)``; exact ``2 sin a / (1 + cos a)`` at ``s = 1`` unless ``closed_form=False``."""
    ConeParams(alpha, s)
    spec = resolve(spec)
    if s == 1.0 and closed_form:
        return 2.0 * math.tan(0.5 * alpha)
    if alpha == HALF_PI:
        return _half_plane(s, spec)
    if alpha > HALF_PI:
        return 2.0 * _half_plane(s, spec) / math.sin(alpha) ** s - cone_integral(math.pi - alpha, s, spec)
    return 2.0 * _cone_converged(alpha, s, spec, with_log=False)


def cone_integral_dalpha(alpha: float, s: float, spec: QuadratureSpec | None = None, *,
                         closed_form: bool = True) -> float:
    """``d/d alpha I(1, alpha, s) = 2 * radial_inner(alpha, s)``."""
    ConeParams(alpha, s)
    if s == 1.0 and closed_form:
        return 1.0 / math.cos(0.5 * alpha) ** 2
    return 2.0 * radial_inner(alpha, s, spec)


def cone_integral_ds(alpha: float, s: float, spec: QuadratureSpec | None = None, *,
                     closed_form: bool = True) -> float:
    """``d/ds I(1, alpha, s)``, the negated log-weighted double integral.

    At ``s = 1`` and ``alpha <= pi/2`` this is ``-H(alpha)`` in closed form.
    """
    ConeParams(alpha, s)
    spec = resolve(spec)
    if alpha > HALF_PI:
        sa = math.sin(alpha)
        half = cone_integral(HALF_PI, s, spec, closed_form=closed_form)
        half_ds = cone_integral_ds(HALF_PI, s, spec, closed_form=closed_form)
        return (2.0 * (half_ds - half * math.log(sa)) / sa ** s
                - cone_integral_ds(math.pi - alpha, s, spec, closed_form=closed_form))
    if s == 1.0 and closed_form:
        return -lemma_H(alpha)
    if alpha == HALF_PI:
        return _half_plane_ds(s, spec)
    return -_cone_converged(alpha, s, spec, with_log=True)
