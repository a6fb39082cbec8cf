"""Planar nonlocal energies: the half-disk functional and the small-``s`` energy limit.

Ray casting
    Seen from a point ``x``, a set meets the ray ``x + r e(phi)`` in finitely many
    intervals ``(a, b)``, and ``int_a^b r^(-1-s) dr = (a^-s - b^-s) / s`` exactly.  A
    set integral of ``|x - y|^(-2-s)`` is therefore a one-dimensional angular
    integral with no radial truncation.  Directions tangent to a circle through ``x``
    carry an integrable ``|phi - phi0|^(-s)`` singularity and are handled with
    algebraic-weight quadrature.

Interaction energies
    For sets with piecewise smooth boundary the divergence theorem applied twice gives

        I_s(A, B) = -(1/s^2) int_{dA} int_{dB} (nu_A . nu_B) |x - y|^-s,

    with outward normals.  Since ``int nu = 0`` over a closed curve, ``|x - y|^-s`` may
    be replaced by ``|x - y|^-s - 1``, which keeps ``s * I_s`` well conditioned as
    ``s -> 0``.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .geometry import (
    Complement,
    Difference,
    Direction,
    Disk,
    HalfPlane,
    Intersection,
    Polygon,
    Region,
    Union,
    breakpoints,
    reflect_region,
)
from .quadrature import DomainError, QuadratureError, QuadratureSpec, fsum, gauss_on, resolve

TWO_PI = 2.0 * math.pi

#: ``lim_{s->0} s int_{|y|>1} |y|^(-2-s) dy``, the measure of the unit circle
CBAR_2D = TWO_PI


def cbar_radial_oracle(s: float) -> float:
    """``s * int_{|y|>1} |y|^(-2-s) dy`` by radial quadrature; equals ``2 pi`` for every s."""
    value, _ = integrate.quad(lambda r: r ** (-1.0 - s), 1.0, math.inf, epsabs=0, epsrel=1e-13)
    return s * TWO_PI * value


class DisjointnessError(ValueError):
    """The two sets of an interaction energy overlap."""


def _quad(func, a, b, spec: QuadratureSpec, **kw) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(func, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                             limit=spec.max_subdivisions, full_output=1, **kw)
    value, err = out[0], out[1]
    if len(out) > 3 and not spec.accepts(value, err):
        raise QuadratureError(f"quadrature on [{a}, {b}] stalled: {out[3]!r} (error {err:.3g})")
    return value, err


# -- ray casting -------------------------------------------------------------------


def ray_energy(intervals, s: float, r_min: float = 0.0, drop_origin: bool = False) -> float:
    """``sum (a^-s - b^-s) / s`` over the intervals clipped to ``r > r_min``.

    An interval starting at the origin is infinite unless ``drop_origin`` is set, in
    which case its ``a^-s`` term is discarded (principal-value bookkeeping).
    """
    total = 0.0
    for a, b in intervals:
        a = max(a, r_min)
        if b <= a:
            continue
        tail = b ** (-s) if b != math.inf else 0.0
        if a == 0.0:
            if not drop_origin:
                return math.inf
            total -= tail
        else:
            total += a ** (-s) - tail
    return total / s


@dataclass(frozen=True)
class AngularResult:
    value: float
    error: float


def angular_integral(profile, x, s: float, regions: list[Region], spec: QuadratureSpec,
                     lo: float = 0.0, hi: float = TWO_PI) -> AngularResult:
    """Integrate ``profile(e)`` over unit directions ``e`` with angle in ``[lo, hi]``.

    The range is split at the breakpoints of ``regions`` seen from ``x``.  Next to a
    direction tangent to a circle through ``x`` the profile grows like ``delta^-s``;
    such panels are parametrised by the offset ``delta`` from the exact tangent vector
    and integrated with the weight ``delta^-s``.
    """
    kinks, singular = set(), {}
    for reg in regions:
        bp = breakpoints(reg, x)
        kinks |= bp.kinks
        singular.update(bp.singular)
    for ang, v in list(singular.items()):
        if ang < 1e-12:
            singular[ang + TWO_PI] = v
    cuts = {lo, hi} | {lo + k * (hi - lo) / 8.0 for k in range(1, 8)}
    cuts |= {p for p in kinks | set(singular) if lo < p < hi}
    cuts = sorted(cuts)
    pts = [cuts[0]]
    for c in cuts[1:]:
        if c - pts[-1] > 1e-13:
            pts.append(c)

    def tangent_at(p):
        for ang, v in singular.items():
            if abs(p - ang) < 1e-11:
                return v
        return None

    def by_angle(phi):
        return profile((math.cos(phi), math.sin(phi)))

    def offset_panel(v, sign, length):
        # directions v cos(d) + sign * perp(v) sin(d), d in (0, length)
        w = (-v[1] * sign, v[0] * sign)

        def g(d):
            d = min(max(d, 1e-15 * length), length)  # QAWS samples d = 0
            return profile(Direction(v, w, d)) * d ** s

        return _quad(g, 0.0, length, spec, weight="alg", wvar=(-s, 0.0))

    values, errors = [], []
    for a, b in zip(pts[:-1], pts[1:]):
        va, vb = tangent_at(a), tangent_at(b)
        if va is not None and vb is not None:
            pieces = [offset_panel(va, 1.0, 0.5 * (b - a)), offset_panel(vb, -1.0, 0.5 * (b - a))]
        elif va is not None:
            pieces = [offset_panel(va, 1.0, b - a)]
        elif vb is not None:
            pieces = [offset_panel(vb, -1.0, b - a)]
        else:
            pieces = [_quad(by_angle, a, b, spec)]
        for v, e in pieces:
            values.append(v)
            errors.append(e)
    return AngularResult(fsum(values), fsum(errors))


def ray_cast_integral(region: Region, x, s: float, spec: QuadratureSpec | None = None,
                      r_min: float = 0.0, drop_origin: bool = False) -> AngularResult:
    """``int_{region, |y-x|>r_min} |x - y|^(-2-s) dy`` by ray casting from ``x``."""
    spec = resolve(spec)

    def profile(e):
        return ray_energy(region.intervals(x, e), s, r_min, drop_origin)

    return angular_integral(profile, x, s, [region], spec)


# -- the half-disk functional ------------------------------------------------------------


@dataclass(frozen=True)
class PlanarScene:
    """Half-disk ``B = H cap B_rho(0)`` in ``H = {x2 > 0}`` and a point on its curved boundary.

    ``point`` is ``"P"`` for ``(-rho, 0)``, ``"Q"`` for ``(0, rho)`` or a polar angle in ``[0, pi]``.
    """

    rho: float
    s: float
    point: str | float = "P"

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"rho must be a positive number, got {self.rho!r}")
        if not (0.0 < self.s < 1.0):
            raise DomainError(f"s must lie in (0, 1), got {self.s!r}")
        if isinstance(self.point, str):
            if self.point not in ("P", "Q"):
                raise DomainError(f"point must be 'P', 'Q' or an angle, got {self.point!r}")
        elif not (0.0 <= float(self.point) <= math.pi):
            raise DomainError(f"polar angle must lie in [0, pi], got {self.point!r}")

    @property
    def omega(self) -> float:
        if self.point == "P":
            return math.pi
        if self.point == "Q":
            return 0.5 * math.pi
        return float(self.point)

    @property
    def x(self) -> tuple[float, float]:
        if self.point == "P":
            return (-self.rho, 0.0)
        if self.point == "Q":
            return (0.0, self.rho)
        return (self.rho * math.cos(self.omega), self.rho * math.sin(self.omega))

    @property
    def half_plane(self) -> HalfPlane:
        return HalfPlane((0.0, 1.0), 0.0)

    @property
    def half_disk(self) -> Region:
        return Intersection((Disk((0.0, 0.0), self.rho), self.half_plane))

    def reflected(self, cutoff: float | None = None) -> Region:
        """Mirror image ``R`` of ``B`` across the tangent line at the point, optionally cut to ``|y - x| < cutoff``."""
        x = self.x
        m = (x[0] / self.rho, x[1] / self.rho)
        r = reflect_region(self.half_disk, x, m)
        if cutoff is not None:
            r = Intersection((r, Disk(x, cutoff)))
        return r

    def domain(self, cutoff: float | None = None) -> Region:
        """``H`` minus ``B`` and ``R``: the integration domain of ``F``."""
        return Difference(self.half_plane, Union((self.half_disk, self.reflected(cutoff))))


def halfdisk_F(scene: PlanarScene, spec: QuadratureSpec | None = None, *,
               r_min: float = 0.0, reflection_cutoff: float | None = None) -> float:
    """``F(x) = int_{H \\ (B u R)} |x - y|^(-2-s) dy``, optionally restricted to ``|y - x| > r_min``.

    ``reflection_cutoff`` keeps only the part of ``R`` within that distance of ``x``;
    it must be positive so that ``R`` still shields the cusp at ``x``.
    """
    if reflection_cutoff is not None and not reflection_cutoff > 0:
        raise DomainError("reflection_cutoff must be positive")
    res = ray_cast_integral(scene.domain(reflection_cutoff), scene.x, scene.s, spec, r_min=r_min)
    if not math.isfinite(res.value):
        raise QuadratureError("F diverged; the excluded set does not shield the evaluation point")
    return res.value


def halfdisk_F_closed_form_P(rho: float, s: float) -> float:
    """``F`` at ``P``: every ray meets the domain in ``(2 rho sin phi, inf)``, so
    ``F = (2 rho)^-s / s * int_0^pi sin^-s = (2 rho)^-s / s * sqrt(pi) G((1-s)/2) / G(1 - s/2)``."""
    w = math.sqrt(math.pi) * math.exp(special.gammaln(0.5 * (1.0 - s)) - special.gammaln(1.0 - 0.5 * s))
    return (2.0 * rho) ** (-s) * w / s


@dataclass(frozen=True)
class CancellationCheck:
    lhs: float
    rhs: float
    correction: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


def halfdisk_cancellation(scene: PlanarScene, spec: QuadratureSpec | None = None) -> CancellationCheck:
    """Both sides of ``pv[int_{H \\ B} k - int_B k] = F(x) - int_{R \\ H} k``.

    The left side is cast ray by ray with the divergent ``r -> 0`` terms dropped; they
    cancel because ``B`` and ``H \\ B`` subtend equal angles at ``x``.  The correction
    vanishes at ``P`` and ``Q`` where ``R`` lies inside ``H``.
    """
    spec = resolve(spec)
    x, s = scene.x, scene.s
    h, b = scene.half_plane, scene.half_disk
    outside = Difference(h, b)

    def profile(e):
        return (ray_energy(outside.intervals(x, e), s, drop_origin=True)
                - ray_energy(b.intervals(x, e), s, drop_origin=True))

    lhs = angular_integral(profile, x, s, [outside, b], spec).value
    r_out = Difference(scene.reflected(), h)
    correction = ray_cast_integral(r_out, x, s, spec).value if scene.point not in ("P", "Q") else 0.0
    return CancellationCheck(lhs, halfdisk_F(scene, spec) - correction, correction)


@dataclass(frozen=True)
class RegionAudit:
    """``F_Q - F_P`` against the integrals over the two extra pieces of the domain at ``Q``."""

    difference: float
    cap: float
    strip: float

    @property
    def extra(self) -> float:
        return self.cap + self.strip

    @property
    def gap(self) -> float:
        return abs(self.difference - self.extra)


def halfdisk_extra_regions(rho: float, s: float, spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """Cartesian integrals over the pieces present at ``Q`` but absent (up to isometry) at ``P``.

    Returns ``(cap, strip)``: the cap ``{|y - (0, 2 rho)| < rho, y2 > 2 rho}`` and the strip
    ``{0 < y2 < rho, |y| > rho}``, both weighted by ``|y - Q|^(-2-s)``.
    """
    spec = resolve(spec)
    e = -(2.0 + s) / 2.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        cap, _ = integrate.dblquad(lambda y2, y1: (y1 * y1 + (y2 - rho) ** 2) ** e,
                                   -rho, rho, lambda y1: 2.0 * rho,
                                   lambda y1: 2.0 * rho + math.sqrt(max(rho * rho - y1 * y1, 0.0)),
                                   epsabs=spec.abs_tol, epsrel=spec.rel_tol)

    def column(y1):
        # y1^s * int_0^V (y1^2 + v^2)^e dv with v = rho - y2, via v = y1 tan(theta)
        if y1 == 0.0:
            return 0.5 / rho
        depth = y1 * y1 / (rho + math.sqrt(rho * rho - y1 * y1)) if y1 < rho else rho
        top = math.atan2(depth, y1)
        inner, _ = _quad(lambda t: math.cos(t) ** s, 0.0, top, spec)
        return inner / y1

    near, _ = _quad(column, 0.0, rho, spec, weight="alg", wvar=(-s, 0.0))
    far, _ = _quad(lambda y1: column(y1) * y1 ** (-s), rho, math.inf, spec)
    return cap, 2.0 * (near + far)


def halfdisk_audit(rho: float, s: float, spec: QuadratureSpec | None = None) -> RegionAudit:
    f_p = halfdisk_F(PlanarScene(rho, s, "P"), spec)
    f_q = halfdisk_F(PlanarScene(rho, s, "Q"), spec)
    cap, strip = halfdisk_extra_regions(rho, s, spec)
    return RegionAudit(f_q - f_p, cap, strip)


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    n_samples: int
    seed: int
    r_min: float


def halfdisk_F_monte_carlo(scene: PlanarScene, n_samples: int = 10_000_000, seed: int = 0,
                           r_min: float | None = None, strata: int = 64, chunk: int = 1_000_000,
                           workers: int = 1) -> MonteCarloEstimate:
    """Monte Carlo estimate of ``F`` restricted to ``|y - x| > r_min``.

    Directions are stratified into ``strata`` equal sectors; radii are drawn from the
    Pareto law ``r_min * U^(-1/s)``, which matches the kernel's radial decay.  Every
    chunk has its own stream spawned from ``seed``, so the estimate does not depend on
    ``workers``.
    """
    if strata < 1 or n_samples < strata:
        raise DomainError("n_samples must be at least the number of strata")
    s, x = scene.s, np.asarray(scene.x)
    r_min = 0.05 * scene.rho if r_min is None else float(r_min)
    if not r_min > 0:
        raise DomainError("the Monte Carlo cross-check needs r_min > 0")
    domain = scene.domain()
    weight = TWO_PI * r_min ** (-s) / s
    sizes = [chunk] * (n_samples // chunk) + ([n_samples % chunk] if n_samples % chunk else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(args):
        size, stream = args
        rng = np.random.default_rng(stream)
        k = np.arange(size) % strata
        phi = TWO_PI * (k + rng.random(size)) / strata
        r = r_min * rng.random(size) ** (-1.0 / s)
        pts = x + r[:, None] * np.column_stack((np.cos(phi), np.sin(phi)))
        hit = domain.contains(pts).astype(float)
        per_stratum = np.bincount(k, weights=hit, minlength=strata)
        counts = np.bincount(k, minlength=strata)
        return per_stratum, counts

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, zip(sizes, streams)))
    else:
        parts = [run(a) for a in zip(sizes, streams)]
    hits = np.array([fsum([p[0][j] for p in parts]) for j in range(strata)])
    counts = np.array([sum(int(p[1][j]) for p in parts) for j in range(strata)])
    frac = hits / counts
    value = weight * fsum(frac) / strata
    var = fsum(frac * (1.0 - frac) / counts) / strata ** 2
    return MonteCarloEstimate(value, weight * math.sqrt(var), n_samples, seed, r_min)


# -- region sets and interaction energies ----------------------------------------------------


@dataclass(frozen=True)
class CirclePiece:
    center: tuple[float, float]
    radius: float

    def rule(self, n: int):
        t = TWO_PI * (np.arange(n) + 0.5) / n
        nrm = np.column_stack((np.cos(t), np.sin(t)))
        return np.asarray(self.center) + self.radius * nrm, nrm, np.full(n, TWO_PI * self.radius / n)


@dataclass(frozen=True)
class SegmentPiece:
    """Boundary edge ``p0 -> p1`` of a counter-clockwise polygon; the outward normal is on the right."""

    p0: tuple[float, float]
    p1: tuple[float, float]

    @property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])

    @property
    def normal(self) -> np.ndarray:
        dx, dy = self.p1[0] - self.p0[0], self.p1[1] - self.p0[1]
        return np.array([dy, -dx]) / self.length

    def rule(self, n: int):
        tau, w = gauss_on(0.0, 1.0, n)
        p0, p1 = np.asarray(self.p0), np.asarray(self.p1)
        pts = p0 + tau[:, None] * (p1 - p0)
        return pts, np.tile(self.normal, (n, 1)), w * self.length


def boundary_pieces(shape: Disk | Polygon):
    if isinstance(shape, Disk):
        return [CirclePiece(shape.center, shape.radius)]
    if isinstance(shape, Polygon):
        return [SegmentPiece(a, b) for a, b in shape.edges()]
    raise TypeError(f"unsupported shape {type(shape).__name__}")


def _sample_boundary(shape: Disk | Polygon, n: int = 64) -> np.ndarray:
    if isinstance(shape, Disk):
        t = TWO_PI * np.arange(n) / n
        return np.asarray(shape.center) + shape.radius * np.column_stack((np.cos(t), np.sin(t)))
    v = np.asarray(shape.vertices)
    mids = 0.5 * (v + np.roll(v, -1, axis=0))
    return np.vstack((v, mids))


def _shrink_toward(shape: Disk | Polygon, pts: np.ndarray, factor: float = 1e-9) -> np.ndarray:
    c = np.asarray(shape.center) if isinstance(shape, Disk) else np.asarray(shape.vertices).mean(axis=0)
    return pts + factor * (c - pts)


@dataclass(frozen=True)
class RegionSet:
    """``include`` minus the ``exclude`` shapes; ``include=None`` stands for the whole plane.

    Excluded shapes must lie inside ``include`` and must not overlap one another.
    """

    include: Disk | Polygon | None
    exclude: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "exclude", tuple(self.exclude))
        if self.include is None and not self.exclude:
            raise DomainError("the whole plane is not a valid region set")
        if self.include is not None:
            for ex in self.exclude:
                pts = _shrink_toward(ex, _sample_boundary(ex))
                if not np.all(self.include.contains(pts) | _on_boundary(self.include, pts)):
                    raise DomainError("excluded shape is not contained in the including shape")

    @property
    def bounded(self) -> bool:
        return self.include is not None

    @property
    def area(self) -> float:
        if self.include is None:
            return math.inf
        return self.include.area - sum(ex.area for ex in self.exclude)

    def region(self) -> Region:
        holes = Union(tuple(self.exclude)) if self.exclude else None
        if self.include is None:
            return Complement(holes)
        return Difference(self.include, holes) if holes is not None else self.include

    def contains(self, pts) -> np.ndarray:
        return self.region().contains(pts)

    def oriented_boundary(self):
        out = [] if self.include is None else [(p, 1.0) for p in boundary_pieces(self.include)]
        for ex in self.exclude:
            out += [(p, -1.0) for p in boundary_pieces(ex)]
        return out

    def interior_samples(self, n: int = 4096, seed: int = 12345) -> np.ndarray:
        shape = self.include if self.include is not None else self.exclude[0]
        if isinstance(shape, Disk):
            lo = np.asarray(shape.center) - shape.radius
            hi = np.asarray(shape.center) + shape.radius
        else:
            v = np.asarray(shape.vertices)
            lo, hi = v.min(axis=0), v.max(axis=0)
        if self.include is None:
            span = hi - lo
            lo, hi = lo - span, hi + span
        pts = lo + (hi - lo) * np.random.default_rng(seed).random((n, 2))
        return pts[self.contains(pts)]


def _on_boundary(shape, pts, tol=1e-9):
    if isinstance(shape, Disk):
        d = np.hypot(pts[:, 0] - shape.center[0], pts[:, 1] - shape.center[1])
        return np.abs(d - shape.radius) <= tol * shape.radius
    return np.zeros(len(pts), dtype=bool)


def check_disjoint(a: RegionSet, b: RegionSet) -> None:
    if not (a.bounded or b.bounded):
        raise DomainError("at least one of the two sets must be bounded")
    for first, second in ((a, b), (b, a)):
        if first.bounded and np.any(second.contains(first.interior_samples())):
            raise DisjointnessError("the two sets overlap in a set of positive measure")


def _kernel(d: np.ndarray, s: float) -> np.ndarray:
    # (1 - d^-s) / s, tending to log d as s -> 0
    return -np.expm1(-s * np.log(d)) / s


def _same_circle(p: CirclePiece, s: float) -> float:
    # 2 pi R^2 int_0^{2pi} cos(u) (1 - (2R sin(u/2))^-s) / s du, using
    # int_0^pi sin^-s = sqrt(pi) G((1-s)/2) / G(1-s/2) and the recurrence for sin^(2-s)
    w = math.sqrt(math.pi) * math.exp(special.gammaln(0.5 * (1.0 - s)) - special.gammaln(1.0 - 0.5 * s))
    r = p.radius
    return -TWO_PI * r * r * (2.0 * r) ** (-s) * 2.0 * w / (2.0 - s)


def _same_segment(p: SegmentPiece, s: float) -> float:
    length = p.length
    return -length * length * math.expm1(-s * math.log(length) + math.log(2.0 / ((1.0 - s) * (2.0 - s)))) / s


def _shared_vertex(p, q):
    if not (isinstance(p, SegmentPiece) and isinstance(q, SegmentPiece)):
        return None
    for a in (p.p0, p.p1):
        for b in (q.p0, q.p1):
            if math.hypot(a[0] - b[0], a[1] - b[1]) <= 1e-12 * max(p.length, q.length):
                return a
    return None


def _corner_pair(p: SegmentPiece, q: SegmentPiece, corner, s: float, spec: QuadratureSpec) -> float:
    # distances a, b from the shared corner along each edge
    def away(seg):
        far = seg.p1 if corner == seg.p0 or math.hypot(seg.p0[0] - corner[0], seg.p0[1] - corner[1]) < 1e-12 else seg.p0
        d = np.asarray(far) - np.asarray(corner)
        return d / np.linalg.norm(d)

    u, v = away(p), away(q)
    cg = float(u @ v)
    dot = float(p.normal @ q.normal)

    def f(b, a):
        d2 = a * a + b * b - 2.0 * a * b * cg
        return float(_kernel(np.sqrt(max(d2, 1e-300)), s))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.dblquad(f, 0.0, p.length, 0.0, q.length,
                                   epsabs=spec.abs_tol, epsrel=spec.rel_tol)
    return dot * val


def _tensor_pair(p, q, s: float, n: int, rows: int = 256) -> float:
    xp, np_, wp = p.rule(n)
    xq, nq, wq = q.rule(n)
    parts = []
    for i in range(0, n, rows):
        dxy = xp[i:i + rows, None, :] - xq[None, :, :]
        d = np.hypot(dxy[..., 0], dxy[..., 1])
        if np.any(d == 0):
            raise QuadratureError("boundary pieces intersect")
        k = _kernel(d, s) * (np_[i:i + rows] @ nq.T)
        parts.append(wp[i:i + rows] @ (k @ wq))
    return fsum(parts)


def _separated_pair(p, q, s: float, spec: QuadratureSpec) -> float:
    n = 32
    prev = _tensor_pair(p, q, s, n)
    while n < 4096:
        n *= 2
        cur = _tensor_pair(p, q, s, n)
        if spec.accepts(cur, cur - prev):
            return cur
        prev = cur
    raise QuadratureError("boundary cubature did not converge; the curves nearly touch")


def pair_integral(p, q, s: float, spec: QuadratureSpec | None = None) -> float:
    """``int_p int_q (nu_p . nu_q) (1 - |x - y|^-s) / s`` for two boundary pieces."""
    spec = resolve(spec)
    if p == q:
        return _same_circle(p, s) if isinstance(p, CirclePiece) else _same_segment(p, s)
    if isinstance(p, SegmentPiece) and isinstance(q, SegmentPiece) and (p.p0, p.p1) == (q.p1, q.p0):
        # a shared edge traversed in opposite directions: opposite normals
        return -_same_segment(p, s)
    corner = _shared_vertex(p, q)
    if corner is not None:
        return _corner_pair(p, q, corner, s, spec)
    return _separated_pair(p, q, s, spec)


def scaled_interaction_energy(a: RegionSet, b: RegionSet, s: float,
                              spec: QuadratureSpec | None = None, check: bool = True) -> float:
    """``s * I_s(A, B)``, bounded as ``s -> 0``."""
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    spec = resolve(spec)
    if check:
        check_disjoint(a, b)
    terms = [oa * ob * pair_integral(pa, pb, s, spec)
             for pa, oa in a.oriented_boundary() for pb, ob in b.oriented_boundary()]
    return fsum(terms)


def interaction_energy(a: RegionSet, b: RegionSet, s: float, spec: QuadratureSpec | None = None) -> float:
    """``I_s(A, B) = int_A int_B |x - y|^(-2-s) dy dx`` for disjoint sets, one of them bounded."""
    return scaled_interaction_energy(a, b, s, spec) / s


def radial_reduction_oracle(radius: float, b: RegionSet, s: float,
                            spec: QuadratureSpec | None = None) -> float:
    """``I_s(B_radius(0), b)`` for ``b`` built from disks centred at the origin.

    Rotational symmetry leaves ``int_0^radius 2 pi r g(r) dr`` where ``g(r)`` is the
    ray-cast integral of ``b`` seen from ``(r, 0)``.
    """
    spec = resolve(spec)
    shapes = ([b.include] if b.include is not None else []) + list(b.exclude)
    if not all(isinstance(sh, Disk) and sh.center == (0.0, 0.0) for sh in shapes):
        raise DomainError("the radial oracle needs disks centred at the origin")
    region = b.region()

    def g(r):
        x = (r, 0.0)

        def profile(e):
            return ray_energy(region.intervals(x, e), s)

        # the integrand is even in phi
        return 2.0 * angular_integral(profile, x, s, [region], spec, 0.0, math.pi).value

    value, _ = _quad(lambda r: TWO_PI * r * g(r), 0.0, radius, spec)
    return value


# -- the small-s limit ---------------------------------------------------------------------


@dataclass(frozen=True)
class SZeroRow:
    s: float
    wetting_term: float
    exterior_term: float
    sigma: float
    target: float

    @property
    def scaled_energy(self) -> float:
        return self.wetting_term + self.sigma * self.exterior_term

    @property
    def exterior_limit(self) -> float:
        """``2 pi |E|``, the limit of ``exterior_term``."""
        return self.target / self.sigma if self.sigma else math.nan

    @property
    def exterior_gap(self) -> float:
        """Relative distance of ``exterior_term`` from ``2 pi |E|``."""
        lim = self.exterior_limit
        return abs(self.exterior_term - lim) / lim


def s_to_zero_limit_check(e: Disk | Polygon, omega: Disk | Polygon, sigma: float, s_grid,
                          spec: QuadratureSpec | None = None) -> list[SZeroRow]:
    """Scaled energies ``s I_s(E, E^c cap Omega)`` and ``s I_s(E, Omega^c)`` along ``s_grid``.

    ``target = 2 pi sigma |E|`` is the limit of ``s [I_s(E, E^c cap Omega) + sigma I_s(E, Omega^c)]``.
    """
    if not (-1.0 < sigma < 1.0):
        raise DomainError(f"sigma out of range: need -1 < sigma < 1, got {sigma!r}")
    grid = [float(v) for v in s_grid]
    if not grid or any(not (0.0 < v <= 0.2) for v in grid) or grid != sorted(grid, reverse=True):
        raise DomainError("s_grid must be a non-empty descending list in (0, 0.2]")
    if not np.all(omega.contains(_sample_boundary(e))):
        raise DomainError("E must lie strictly inside Omega")
    inner = RegionSet(e)
    wet = RegionSet(omega, (e,))
    outside = RegionSet(None, (omega,))
    check_disjoint(inner, wet)
    check_disjoint(inner, outside)
    target = CBAR_2D * sigma * e.area
    return [SZeroRow(s, scaled_interaction_energy(inner, wet, s, spec, check=False),
                     scaled_interaction_energy(inner, outside, s, spec, check=False), sigma, target)
            for s in grid]
