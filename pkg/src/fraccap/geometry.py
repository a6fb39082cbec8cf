"""Planar sets built from disks, half-planes and polygons.

Every set answers two questions: point membership (vectorised) and the set of
``r > 0`` for which ``x + r e`` lies in it, returned as a sorted list of disjoint
open intervals.  A point within ``SNAP`` (relative) of a circle or line is treated
as lying on it, so rays cast from a boundary point start exactly at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SNAP = 1e-12
INF = math.inf

Interval = tuple[float, float]


def _clip(a: float, b: float) -> list[Interval]:
    a = max(a, 0.0)
    return [(a, b)] if b > a else []


def intersect(u: list[Interval], v: list[Interval]) -> list[Interval]:
    out = []
    i = j = 0
    while i < len(u) and j < len(v):
        a, b = max(u[i][0], v[j][0]), min(u[i][1], v[j][1])
        if b > a:
            out.append((a, b))
        if u[i][1] < v[j][1]:
            i += 1
        else:
            j += 1
    return out


def complement(u: list[Interval]) -> list[Interval]:
    out, start = [], 0.0
    for a, b in u:
        if a > start:
            out.append((start, a))
        start = b
    if start < INF:
        out.append((start, INF))
    return out


def union(u: list[Interval], v: list[Interval]) -> list[Interval]:
    return complement(intersect(complement(u), complement(v)))


def difference(u: list[Interval], v: list[Interval]) -> list[Interval]:
    return intersect(u, complement(v))


class Direction(tuple):
    """Unit vector ``v cos(d) + w sin(d)`` that keeps its frame.

    Dot products are formed as ``(v.u) cos d + (w.u) sin d``, so a component along a
    normal orthogonal to ``v`` keeps full relative accuracy for tiny ``d``.
    """

    def __new__(cls, v, w, d):
        c, sn = math.cos(d), math.sin(d)
        self = super().__new__(cls, (v[0] * c + w[0] * sn, v[1] * c + w[1] * sn))
        self.frame = (v, w, c, sn)
        return self

    def dot(self, u0: float, u1: float) -> float:
        v, w, c, sn = self.frame
        return (v[0] * u0 + v[1] * u1) * c + (w[0] * u0 + w[1] * u1) * sn


def _dot(e, u0: float, u1: float) -> float:
    if isinstance(e, Direction):
        return e.dot(u0, u1)
    return e[0] * u0 + e[1] * u1


class Region:
    """Base class for planar sets."""

    def contains(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def intervals(self, x, e) -> list[Interval]:
        raise NotImplementedError

    def primitives(self) -> list["Region"]:
        return [self]

    def __and__(self, other):
        return Intersection((self, other))

    def __or__(self, other):
        return Union((self, other))

    def __sub__(self, other):
        return Difference(self, other)


@dataclass(frozen=True)
class Disk(Region):
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def area(self) -> float:
        return math.pi * self.radius ** 2

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        d = pts - np.asarray(self.center)
        return np.einsum("...i,...i->...", d, d) < self.radius ** 2

    def intervals(self, x, e):
        dx, dy = x[0] - self.center[0], x[1] - self.center[1]
        scale = self.radius ** 2
        b = e[0] * dx + e[1] * dy
        c = dx * dx + dy * dy - scale
        if abs(c) <= SNAP * scale:
            # on the circle: the chord is -2 R (e . n) with the unit normal n
            c = 0.0
            d = math.hypot(dx, dy)
            b = self.radius * _dot(e, dx / d, dy / d)
        disc = b * b - c
        if disc <= 0.0:
            return []
        q = -(b + math.copysign(math.sqrt(disc), b))
        r1, r2 = q, (c / q if q != 0.0 else 0.0)
        if r1 > r2:
            r1, r2 = r2, r1
        return _clip(r1, r2)

    def distance_to_center(self, x) -> float:
        return math.hypot(x[0] - self.center[0], x[1] - self.center[1])


@dataclass(frozen=True)
class HalfPlane(Region):
    """``{y : normal . y > offset}``; ``normal`` is normalised on construction."""

    normal: tuple[float, float]
    offset: float = 0.0

    def __post_init__(self):
        n = math.hypot(*self.normal)
        if n == 0:
            raise ValueError("half-plane normal must be non-zero")
        object.__setattr__(self, "normal", (self.normal[0] / n, self.normal[1] / n))
        object.__setattr__(self, "offset", float(self.offset) / n)

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        return pts @ np.asarray(self.normal) > self.offset

    def signed_distance(self, x) -> float:
        return self.normal[0] * x[0] + self.normal[1] * x[1] - self.offset

    def intervals(self, x, e):
        g = self.signed_distance(x)
        if abs(g) <= SNAP:
            g = 0.0
        rate = self.normal[0] * e[0] + self.normal[1] * e[1]
        if rate == 0.0:
            return [(0.0, INF)] if g > 0 else []
        r0 = -g / rate
        if rate > 0:
            return _clip(r0, INF)
        return _clip(0.0, r0) if g >= 0 else []


@dataclass(frozen=True)
class Polygon(Region):
    """Simple polygon; vertices are stored counter-clockwise."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        v = [(float(a), float(b)) for a, b in self.vertices]
        if len(v) < 3:
            raise ValueError("a polygon needs at least three vertices")
        if _signed_area(v) < 0:
            v.reverse()
        object.__setattr__(self, "vertices", tuple(v))

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        px, py = pts[..., 0], pts[..., 1]
        inside = np.zeros(px.shape, dtype=bool)
        for (x0, y0), (x1, y1) in self.edges():
            crosses = (y0 > py) != (y1 > py)
            with np.errstate(divide="ignore", invalid="ignore"):
                xc = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            inside ^= crosses & (px < xc)
        return inside

    def intervals(self, x, e):
        hits = []
        for (x0, y0), (x1, y1) in self.edges():
            ex, ey = x1 - x0, y1 - y0
            den = e[0] * ey - e[1] * ex
            if den == 0.0:
                continue
            wx, wy = x0 - x[0], y0 - x[1]
            r = (wx * ey - wy * ex) / den
            tau = (wx * e[1] - wy * e[0]) / den
            if 0.0 <= tau < 1.0 and r > SNAP:
                hits.append(r)
        hits.sort()
        mid = hits[0] * 0.5 if hits else 1.0
        probe = np.array([x[0] + mid * e[0], x[1] + mid * e[1]])
        inside = bool(self.contains(probe))
        edges = [0.0] + hits + [INF]
        out = []
        for a, b in zip(edges[:-1], edges[1:]):
            if inside:
                out.append((a, b))
            inside = not inside
        return [iv for iv in out if iv[1] > iv[0]]


def _signed_area(v) -> float:
    return 0.5 * sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
                     for i in range(len(v)))


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple[Region, ...]

    def contains(self, pts):
        return np.logical_and.reduce([p.contains(pts) for p in self.parts])

    def intervals(self, x, e):
        out = self.parts[0].intervals(x, e)
        for p in self.parts[1:]:
            if not out:
                break
            out = intersect(out, p.intervals(x, e))
        return out

    def primitives(self):
        return [q for p in self.parts for q in p.primitives()]


@dataclass(frozen=True)
class Union(Region):
    parts: tuple[Region, ...]

    def contains(self, pts):
        return np.logical_or.reduce([p.contains(pts) for p in self.parts])

    def intervals(self, x, e):
        out: list[Interval] = []
        for p in self.parts:
            out = union(out, p.intervals(x, e))
        return out

    def primitives(self):
        return [q for p in self.parts for q in p.primitives()]


@dataclass(frozen=True)
class Difference(Region):
    base: Region
    removed: Region

    def contains(self, pts):
        return self.base.contains(pts) & ~self.removed.contains(pts)

    def intervals(self, x, e):
        return difference(self.base.intervals(x, e), self.removed.intervals(x, e))

    def primitives(self):
        return self.base.primitives() + self.removed.primitives()


@dataclass(frozen=True)
class Complement(Region):
    inner: Region

    def contains(self, pts):
        return ~self.inner.contains(pts)

    def intervals(self, x, e):
        return complement(self.inner.intervals(x, e))

    def primitives(self):
        return self.inner.primitives()


def reflect_point(y, x, m) -> tuple[float, float]:
    """Mirror ``y`` across the line through ``x`` with unit normal ``m``."""
    k = 2.0 * ((y[0] - x[0]) * m[0] + (y[1] - x[1]) * m[1])
    return y[0] - k * m[0], y[1] - k * m[1]


def reflect_region(region: Region, x, m) -> Region:
    """Mirror image of a disk / half-plane expression across the line through ``x`` with normal ``m``."""
    if isinstance(region, Disk):
        return Disk(reflect_point(region.center, x, m), region.radius)
    if isinstance(region, HalfPlane):
        n = region.normal
        nm = n[0] * m[0] + n[1] * m[1]
        xm = x[0] * m[0] + x[1] * m[1]
        # n . refl(z) = n' . z + 2 (x.m)(n.m)
        return HalfPlane((n[0] - 2 * nm * m[0], n[1] - 2 * nm * m[1]), region.offset - 2 * xm * nm)
    if isinstance(region, Polygon):
        return Polygon(tuple(reflect_point(v, x, m) for v in reversed(region.vertices)))
    if isinstance(region, Intersection):
        return Intersection(tuple(reflect_region(p, x, m) for p in region.parts))
    if isinstance(region, Union):
        return Union(tuple(reflect_region(p, x, m) for p in region.parts))
    if isinstance(region, Difference):
        return Difference(reflect_region(region.base, x, m), reflect_region(region.removed, x, m))
    if isinstance(region, Complement):
        return Complement(reflect_region(region.inner, x, m))
    raise TypeError(f"cannot reflect {type(region).__name__}")


# -- angular breakpoints ------------------------------------------------------


@dataclass
class Breakpoints:
    """Directions (radians in [0, 2 pi)) where the ray structure seen from a point changes."""

    kinks: set = field(default_factory=set)
    #: angle -> exact unit tangent vector
    singular: dict = field(default_factory=dict)


def _angle(v) -> float:
    return math.atan2(v[1], v[0]) % (2.0 * math.pi)


def _line_of(h: HalfPlane):
    # point on the line and its direction
    n = h.normal
    return (n[0] * h.offset, n[1] * h.offset), (-n[1], n[0])


def _circle_line(d: Disk, h: HalfPlane):
    p, t = _line_of(h)
    fx, fy = p[0] - d.center[0], p[1] - d.center[1]
    b = fx * t[0] + fy * t[1]
    c = fx * fx + fy * fy - d.radius ** 2
    disc = b * b - c
    if disc < 0:
        return []
    r = math.sqrt(disc)
    return [(p[0] + (-b + k * r) * t[0], p[1] + (-b + k * r) * t[1]) for k in (-1.0, 1.0)]


def _circle_circle(a: Disk, b: Disk):
    dx, dy = b.center[0] - a.center[0], b.center[1] - a.center[1]
    d = math.hypot(dx, dy)
    if d == 0 or d > a.radius + b.radius or d < abs(a.radius - b.radius):
        return []
    l = (a.radius ** 2 - b.radius ** 2 + d * d) / (2 * d)
    h = math.sqrt(max(a.radius ** 2 - l * l, 0.0))
    mx, my = a.center[0] + l * dx / d, a.center[1] + l * dy / d
    return [(mx - h * dy / d, my + h * dx / d), (mx + h * dy / d, my - h * dx / d)]


def _line_line(g: HalfPlane, h: HalfPlane):
    (p, t), (q, u) = _line_of(g), _line_of(h)
    den = t[0] * u[1] - t[1] * u[0]
    if abs(den) < 1e-15:
        return []
    k = ((q[0] - p[0]) * u[1] - (q[1] - p[1]) * u[0]) / den
    return [(p[0] + k * t[0], p[1] + k * t[1])]


def breakpoints(region: Region, x) -> Breakpoints:
    """Collect the directions from ``x`` at which the ray intervals of ``region`` are not smooth."""
    bp = Breakpoints()
    prims = list(dict.fromkeys(region.primitives()))
    vertices = []
    for p in prims:
        if isinstance(p, Disk):
            dist = p.distance_to_center(x)
            if abs(dist - p.radius) <= 1e-10 * p.radius:
                n = ((x[0] - p.center[0]) / dist, (x[1] - p.center[1]) / dist)
                for v in ((-n[1], n[0]), (n[1], -n[0])):
                    bp.singular[_angle(v)] = v
            elif dist > p.radius:
                toward = _angle((p.center[0] - x[0], p.center[1] - x[1]))
                half = math.asin(p.radius / dist)
                bp.kinks.update(((toward + half) % (2 * math.pi), (toward - half) % (2 * math.pi)))
        elif isinstance(p, HalfPlane):
            a = _angle((-p.normal[1], p.normal[0]))
            bp.kinks.update((a, (a + math.pi) % (2 * math.pi)))
        elif isinstance(p, Polygon):
            vertices.extend(p.vertices)
    for i, p in enumerate(prims):
        for q in prims[i + 1:]:
            if isinstance(p, Disk) and isinstance(q, Disk):
                vertices += _circle_circle(p, q)
            elif isinstance(p, Disk) and isinstance(q, HalfPlane):
                vertices += _circle_line(p, q)
            elif isinstance(p, HalfPlane) and isinstance(q, Disk):
                vertices += _circle_line(q, p)
            elif isinstance(p, HalfPlane) and isinstance(q, HalfPlane):
                vertices += _line_line(p, q)
    for v in vertices:
        if math.hypot(v[0] - x[0], v[1] - x[1]) > 1e-12:
            bp.kinks.add(_angle((v[0] - x[0], v[1] - x[1])))
    return bp


# -- JSON region input ------------------------------------------------------------


def region_from_json(obj: dict) -> Disk | Polygon:
    """``{"type": "disk", "center": [x, y], "radius": r}`` or ``{"type": "polygon", "vertices": [[x, y], ...]}``."""
    kind = obj.get("type")
    if kind == "disk":
        return Disk(tuple(obj["center"]), float(obj["radius"]))
    if kind == "polygon":
        return Polygon(tuple(tuple(v) for v in obj["vertices"]))
    raise ValueError(f"unknown region type {kind!r}")


def region_to_json(region: Disk | Polygon) -> dict:
    if isinstance(region, Disk):
        return {"type": "disk", "center": list(region.center), "radius": region.radius}
    if isinstance(region, Polygon):
        return {"type": "polygon", "vertices": [list(v) for v in region.vertices]}
    raise TypeError(f"cannot serialise {type(region).__name__}")
