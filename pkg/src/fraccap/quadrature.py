"""Quadrature settings and the fixed Gauss rules shared by the integral modules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class QuadratureError(ArithmeticError):
    """Raised when an integral cannot be brought within the requested tolerance."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a function."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy targets for every integral in the package.

    ``far_field_cut`` is the radius beyond which radial integrals switch to the
    inverted variable ``u = far_field_cut / r`` on ``(0, 1]``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    far_field_cut: float = 2.0

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol + self.rel_tol <= 0:
            raise ValueError("abs_tol + rel_tol must be positive")
        if int(self.max_subdivisions) < 1:
            raise ValueError("max_subdivisions must be a positive integer")
        if not self.far_field_cut > 1:
            raise ValueError("far_field_cut must exceed 1")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def accepts(self, value: float, error: float) -> bool:
        return abs(error) <= self.tolerance(value)


DEFAULT_SPEC = QuadratureSpec()


def resolve(spec: QuadratureSpec | None) -> QuadratureSpec:
    return DEFAULT_SPEC if spec is None else spec


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_on(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(n)
    return a + (b - a) * x, (b - a) * w


@lru_cache(maxsize=64)
def graded_rule(n: int, panels: int, ratio: float = 0.25) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss rule on (0, 1] with panels shrinking geometrically toward 0.

    Panel ``k`` covers ``[ratio**(k+1), ratio**k]``; the leftover ``[0, ratio**panels]``
    is dropped, so integrands must vanish at 0 at least like ``u**s`` with ``s > 0``.
    """
    x, w = gauss_legendre(n)
    edges = ratio ** np.arange(panels + 1, dtype=float)
    lo, hi = edges[1:], edges[:-1]
    nodes = (lo[:, None] + (hi - lo)[:, None] * x[None, :]).ravel()
    weights = ((hi - lo)[:, None] * w[None, :]).ravel()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def graded_panels_for(exponent: float, target: float = 1e-17, ratio: float = 0.25) -> int:
    """Panels needed so that the dropped piece ``[0, ratio**K]`` of a ``u**exponent``
    integrand is below ``target``."""
    return int(math.ceil(math.log(target) / ((1.0 + exponent) * math.log(ratio))))


def fsum(values) -> float:
    """Order-independent, compensated sum."""
    return math.fsum(np.asarray(values, dtype=float).ravel())
