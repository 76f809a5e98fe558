"""Planar image domains: canonical variants, convex hulls, boundary distances.

The canonical variants (disc, half-plane, strip, crescent between two
internally tangent discs) use closed-form hulls and distances; generic
regions enter as sampled boundaries and are handled through their discrete
convex hull.  A half-plane is stored as ``{w : Re(conj(n) w) < offset}``
with outward unit normal n, a strip as two such constraints sharing the
normal.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .errors import DegenerateGeometryError, DomainValidityError

_COLLINEAR_RTOL = 1e-12


def _cross(o: complex, a: complex, b: complex) -> float:
    """Signed area of the parallelogram spanned by a-o and b-o."""
    u, v = a - o, b - o
    return u.real * v.imag - u.imag * v.real


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    variant = "disc"

    def __post_init__(self) -> None:
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError("disc radius must be positive")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class HalfPlane:
    """The set {w : Re(conj(unit_normal) * w) < offset}."""

    unit_normal: complex
    offset: float

    variant = "halfplane"

    def __post_init__(self) -> None:
        n = complex(self.unit_normal)
        if abs(abs(n) - 1.0) > 1e-12:
            raise ValueError("unit_normal must have modulus 1 within 1e-12")
        object.__setattr__(self, "unit_normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    def coordinate(self, w: complex) -> float:
        """Signed coordinate along the outward normal."""
        return (self.unit_normal.conjugate() * w).real


@dataclass(frozen=True)
class Strip:
    """The set {w : low < Re(conj(unit_normal) * w) < high}."""

    unit_normal: complex
    low: float
    high: float

    variant = "strip"

    def __post_init__(self) -> None:
        n = complex(self.unit_normal)
        if abs(abs(n) - 1.0) > 1e-12:
            raise ValueError("unit_normal must have modulus 1 within 1e-12")
        if not (self.low < self.high):
            raise ValueError("strip requires low < high")
        object.__setattr__(self, "unit_normal", n)
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))

    def coordinate(self, w: complex) -> float:
        return (self.unit_normal.conjugate() * w).real


@dataclass(frozen=True)
class CrescentDomain:
    """Region between two internally tangent discs: outer minus closed inner."""

    outer: Disc
    inner: Disc

    variant = "crescent"

    def __post_init__(self) -> None:
        gap = abs(self.outer.center - self.inner.center) + self.inner.radius
        if self.inner.radius >= self.outer.radius:
            raise ValueError("inner disc must be strictly smaller")
        if abs(gap - self.outer.radius) > 1e-12 * self.outer.radius:
            raise ValueError(
                "inner disc must be internally tangent to the outer boundary"
            )


@dataclass(frozen=True)
class SampledBoundary:
    """Generic region given by boundary samples; treated through its hull."""

    points: tuple[complex, ...]

    variant = "sampled"

    def __post_init__(self) -> None:
        if len(self.points) < 3:
            raise ValueError("need at least 3 boundary samples")
        object.__setattr__(self, "points", tuple(complex(p) for p in self.points))


@dataclass(frozen=True)
class PolygonHull:
    """Convex polygon, counterclockwise vertex chain."""

    vertices: tuple[complex, ...]

    variant = "polygon"

    def __post_init__(self) -> None:
        verts = tuple(complex(p) for p in self.vertices)
        if len(verts) < 3:
            raise ValueError("polygon hull needs at least 3 vertices")
        scale = max(abs(v) for v in verts) + 1.0
        k = len(verts)
        for i in range(k):
            c = _cross(verts[i], verts[(i + 1) % k], verts[(i + 2) % k])
            if c < -_COLLINEAR_RTOL * scale * scale:
                raise ValueError("vertices are not in convex counterclockwise order")
        object.__setattr__(self, "vertices", verts)


Domain = Union[Disc, HalfPlane, Strip, CrescentDomain, SampledBoundary]
HullShape = Union[Disc, HalfPlane, Strip, PolygonHull]


@dataclass(frozen=True)
class BoundaryDistance:
    distance: float
    nearest: complex
    inside: bool


def domain_scale(d: Domain | PolygonHull) -> float:
    """Characteristic length used to scale tolerances."""
    if isinstance(d, Disc):
        return d.radius
    if isinstance(d, HalfPlane):
        return max(1.0, abs(d.offset))
    if isinstance(d, Strip):
        return 0.5 * (d.high - d.low)
    if isinstance(d, CrescentDomain):
        return d.outer.radius
    if isinstance(d, SampledBoundary):
        return max(abs(p) for p in d.points) + 1.0
    if isinstance(d, PolygonHull):
        return max(abs(v) for v in d.vertices) + 1.0
    raise TypeError(f"not a domain: {d!r}")


def convex_hull(points: Sequence[complex]) -> PolygonHull:
    """Monotone-chain convex hull of a planar point set, counterclockwise.

    Points interior to an edge are dropped (collinearity tolerance 1e-12
    relative), so strictly convex inputs are returned in full.  Raises if
    all points are collinear.
    """
    pts = sorted(set(complex(p) for p in points), key=lambda p: (p.real, p.imag))
    if len(pts) < 3:
        raise DegenerateGeometryError("need at least 3 distinct points")
    scale = max(abs(p) for p in pts) + 1.0
    tol = _COLLINEAR_RTOL * scale * scale

    def build(seq: list[complex]) -> list[complex]:
        chain: list[complex] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= tol:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        raise DegenerateGeometryError("all points are collinear")
    return PolygonHull(vertices=tuple(verts))


def hull_of_domain(d: Domain) -> HullShape:
    """Convex hull: identity for convex variants, outer disc for a crescent,
    discrete hull for sampled boundaries."""
    if isinstance(d, (Disc, HalfPlane, Strip)):
        return d
    if isinstance(d, CrescentDomain):
        return d.outer
    if isinstance(d, SampledBoundary):
        return convex_hull(d.points)
    raise TypeError(f"not a domain: {d!r}")


def _segment_nearest(w: complex, a: complex, b: complex) -> complex:
    ab = b - a
    denom = (ab.conjugate() * ab).real
    if denom == 0.0:
        return a
    t = ((w - a).conjugate() * ab).real / denom
    t = min(1.0, max(0.0, t))
    return a + t * ab


def _polygon_distance(w: complex, poly: PolygonHull) -> BoundaryDistance:
    verts = poly.vertices
    k = len(verts)
    best_p = verts[0]
    best_d = abs(w - best_p)
    inside = True
    scale = domain_scale(poly)
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        if _cross(a, b, w) < -1e-12 * scale * scale:
            inside = False
        p = _segment_nearest(w, a, b)
        dist = abs(w - p)
        if dist < best_d:
            best_d, best_p = dist, p
    return BoundaryDistance(distance=best_d, nearest=best_p, inside=inside)


def dist_to_hull_boundary(w: complex, d: Domain | PolygonHull) -> BoundaryDistance:
    """Unsigned distance from w to the boundary of the convex hull of d,
    with a realizing boundary point.  Canonical variants use closed forms."""
    w = complex(w)
    hull = d if isinstance(d, PolygonHull) else hull_of_domain(d)
    if isinstance(hull, Disc):
        rad = abs(w - hull.center)
        if rad == 0.0:
            return BoundaryDistance(hull.radius, hull.center + hull.radius, True)
        nearest = hull.center + hull.radius * (w - hull.center) / rad
        return BoundaryDistance(abs(hull.radius - rad), nearest, rad < hull.radius)
    if isinstance(hull, HalfPlane):
        s = hull.coordinate(w)
        nearest = w + (hull.offset - s) * hull.unit_normal
        return BoundaryDistance(abs(hull.offset - s), nearest, s < hull.offset)
    if isinstance(hull, Strip):
        s = hull.coordinate(w)
        to_low, to_high = s - hull.low, hull.high - s
        if abs(to_low) <= abs(to_high):
            nearest = w + (hull.low - s) * hull.unit_normal
            dist = abs(to_low)
        else:
            nearest = w + (hull.high - s) * hull.unit_normal
            dist = abs(to_high)
        return BoundaryDistance(dist, nearest, hull.low < s < hull.high)
    if isinstance(hull, PolygonHull):
        return _polygon_distance(w, hull)
    raise TypeError(f"unsupported hull shape: {hull!r}")


def contains(d: Domain, w: complex, tol: float = 0.0) -> bool:
    """Membership in the region itself (not its hull), within slack tol."""
    w = complex(w)
    if isinstance(d, Disc):
        return abs(w - d.center) < d.radius + tol
    if isinstance(d, HalfPlane):
        return d.coordinate(w) < d.offset + tol
    if isinstance(d, Strip):
        s = d.coordinate(w)
        return d.low - tol < s < d.high + tol
    if isinstance(d, CrescentDomain):
        return (
            abs(w - d.outer.center) < d.outer.radius + tol
            and abs(w - d.inner.center) > d.inner.radius - tol
        )
    if isinstance(d, SampledBoundary):
        return _polygon_distance(w, convex_hull(d.points)).inside
    raise TypeError(f"not a domain: {d!r}")


def support_halfplane_at(d: Domain | PolygonHull, p: complex) -> HalfPlane:
    """Supporting half-plane of the hull of d at boundary point p.

    Smooth boundary points get the tangent line; polygon vertices get the
    bisector of the adjacent edge normals.
    """
    p = complex(p)
    hull = d if isinstance(d, PolygonHull) else hull_of_domain(d)
    scale = domain_scale(hull)
    tol = 1e-9 * scale
    if isinstance(hull, Disc):
        rad = abs(p - hull.center)
        if abs(rad - hull.radius) > tol:
            raise DomainValidityError(f"{p} is not on the hull boundary")
        n = (p - hull.center) / rad
        return HalfPlane(unit_normal=n, offset=(n.conjugate() * p).real)
    if isinstance(hull, HalfPlane):
        if abs(hull.coordinate(p) - hull.offset) > tol:
            raise DomainValidityError(f"{p} is not on the hull boundary")
        return hull
    if isinstance(hull, Strip):
        s = hull.coordinate(p)
        if abs(s - hull.high) <= tol:
            return HalfPlane(unit_normal=hull.unit_normal, offset=hull.high)
        if abs(s - hull.low) <= tol:
            return HalfPlane(unit_normal=-hull.unit_normal, offset=-hull.low)
        raise DomainValidityError(f"{p} is not on the hull boundary")
    if isinstance(hull, PolygonHull):
        info = _polygon_distance(p, hull)
        if info.distance > tol:
            raise DomainValidityError(f"{p} is not on the hull boundary")
        verts = hull.vertices
        k = len(verts)
        # Vertex case: outward bisector of the two adjacent edge normals.
        for i, v in enumerate(verts):
            if abs(p - v) <= tol:
                prev_edge = v - verts[i - 1]
                next_edge = verts[(i + 1) % k] - v
                n1 = -1j * prev_edge / abs(prev_edge)
                n2 = -1j * next_edge / abs(next_edge)
                n = n1 + n2
                n = n / abs(n)
                return HalfPlane(unit_normal=n, offset=(n.conjugate() * v).real)
        # Edge interior: outward normal of the nearest edge.
        for i in range(k):
            a, b = verts[i], verts[(i + 1) % k]
            if abs(p - _segment_nearest(p, a, b)) <= tol:
                edge = b - a
                n = -1j * edge / abs(edge)
                return HalfPlane(unit_normal=n, offset=(n.conjugate() * a).real)
        raise DomainValidityError(f"{p} is not on the hull boundary")
    raise TypeError(f"unsupported hull shape: {hull!r}")


def disc_inside_domain(candidate: Disc, d: Domain, tol: float = 0.0) -> bool:
    """Whether the closed candidate disc is contained in d (tangency allowed)."""
    c, t = candidate.center, candidate.radius
    if isinstance(d, Disc):
        return abs(c - d.center) + t <= d.radius + tol
    if isinstance(d, HalfPlane):
        return d.coordinate(c) + t <= d.offset + tol
    if isinstance(d, Strip):
        s = d.coordinate(c)
        return s - t >= d.low - tol and s + t <= d.high + tol
    if isinstance(d, CrescentDomain):
        return (
            abs(c - d.outer.center) + t <= d.outer.radius + tol
            and abs(c - d.inner.center) >= d.inner.radius + t - tol
        )
    if isinstance(d, SampledBoundary):
        poly = convex_hull(d.points)
        info = _polygon_distance(c, poly)
        return info.inside and info.distance >= t - tol
    raise TypeError(f"not a domain: {d!r}")


def regular_convexity_certificate(
    d: Domain,
    p: complex,
    search_radii: Sequence[float] | None = None,
) -> Disc | None:
    """Search for a disc inside d whose boundary passes through p.

    A hull boundary point touchable by such a disc witnesses regular
    convexity there.  The search walks candidate radii along the inward
    normal; ``None`` means "not found by this schedule", not a proof of
    nonexistence.  Membership convention: p lies on the candidate's
    boundary, the candidate's closure inside d up to tolerance.
    """
    p = complex(p)
    half = support_halfplane_at(d, p)
    inward = -half.unit_normal
    scale = domain_scale(d)
    if search_radii is None:
        search_radii = [scale * 2.0 ** (-k) for k in range(1, 21)]
    tol = 1e-12 * scale
    for t in search_radii:
        candidate = Disc(center=p + t * inward, radius=t)
        if disc_inside_domain(candidate, d, tol=tol):
            return candidate
    return None


def build_crescent(outer: Disc, contact: complex) -> CrescentDomain:
    """Crescent inside ``outer`` whose hull-boundary distance is realized at
    ``contact``.

    The removed disc has half the outer radius and is internally tangent to
    the outer circle at the antipode of ``contact``, so ``contact`` stays on
    the free outer arc while the tangency cusp sits diametrically opposite.
    """
    contact = complex(contact)
    if abs(abs(contact - outer.center) - outer.radius) > 1e-9 * outer.radius:
        raise DomainValidityError(f"{contact} is not on the outer boundary circle")
    inner_center = 1.5 * outer.center - 0.5 * contact
    inner = Disc(center=inner_center, radius=0.5 * outer.radius)
    return CrescentDomain(outer=outer, inner=inner)


def sample_boundary(d: Domain, n: int) -> list[complex]:
    """Deterministic boundary samples; used by hull and distance validation.

    Unbounded variants (half-plane, strip) are sampled on a window of ten
    characteristic lengths.
    """
    if n < 3:
        raise ValueError("need at least 3 samples")
    if isinstance(d, Disc):
        return [
            d.center + d.radius * cmath.exp(2j * math.pi * k / n) for k in range(n)
        ]
    if isinstance(d, CrescentDomain):
        n_outer = max(3, (2 * n) // 3)
        n_inner = max(3, n - n_outer)
        pts = [
            d.outer.center + d.outer.radius * cmath.exp(2j * math.pi * k / n_outer)
            for k in range(n_outer)
        ]
        pts += [
            d.inner.center + d.inner.radius * cmath.exp(2j * math.pi * k / n_inner)
            for k in range(n_inner)
        ]
        return pts
    if isinstance(d, HalfPlane):
        span = 10.0 * domain_scale(d)
        tang = 1j * d.unit_normal
        base = d.offset * d.unit_normal
        return [base + span * (2.0 * k / (n - 1) - 1.0) * tang for k in range(n)]
    if isinstance(d, Strip):
        span = 10.0 * domain_scale(d)
        tang = 1j * d.unit_normal
        half = n // 2
        lows = [
            d.low * d.unit_normal + span * (2.0 * k / (half - 1) - 1.0) * tang
            for k in range(half)
        ]
        highs = [
            d.high * d.unit_normal + span * (2.0 * k / (n - half - 1) - 1.0) * tang
            for k in range(n - half)
        ]
        return lows + highs
    if isinstance(d, SampledBoundary):
        return list(d.points)
    raise TypeError(f"not a domain: {d!r}")


def domain_to_json(d: Domain) -> dict:
    if isinstance(d, Disc):
        return {
            "variant": "disc",
            "center": [d.center.real, d.center.imag],
            "radius": d.radius,
        }
    if isinstance(d, HalfPlane):
        return {
            "variant": "halfplane",
            "unit_normal": [d.unit_normal.real, d.unit_normal.imag],
            "offset": d.offset,
        }
    if isinstance(d, Strip):
        return {
            "variant": "strip",
            "unit_normal": [d.unit_normal.real, d.unit_normal.imag],
            "low": d.low,
            "high": d.high,
        }
    if isinstance(d, CrescentDomain):
        return {
            "variant": "crescent",
            "outer": domain_to_json(d.outer),
            "inner": domain_to_json(d.inner),
        }
    if isinstance(d, SampledBoundary):
        return {
            "variant": "sampled",
            "points": [[p.real, p.imag] for p in d.points],
        }
    raise TypeError(f"not a domain: {d!r}")


def domain_from_json(obj: dict) -> Domain:
    variant = obj["variant"]
    if variant == "disc":
        return Disc(center=complex(*obj["center"]), radius=obj["radius"])
    if variant == "halfplane":
        return HalfPlane(unit_normal=complex(*obj["unit_normal"]), offset=obj["offset"])
    if variant == "strip":
        return Strip(
            unit_normal=complex(*obj["unit_normal"]), low=obj["low"], high=obj["high"]
        )
    if variant == "crescent":
        return CrescentDomain(
            outer=domain_from_json(obj["outer"]), inner=domain_from_json(obj["inner"])
        )
    if variant == "sampled":
        return SampledBoundary(points=tuple(complex(x, y) for x, y in obj["points"]))
    raise ValueError(f"unknown domain variant: {variant}")


def export_hull_csv(d: Domain | PolygonHull, path: Path | str, samples: int = 256) -> Path:
    """Write hull vertices (or boundary samples for curved hulls) as x,y rows."""
    hull = d if isinstance(d, PolygonHull) else hull_of_domain(d)
    if isinstance(hull, PolygonHull):
        pts = list(hull.vertices)
    else:
        pts = sample_boundary(hull, samples)
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y"])
        for p in pts:
            writer.writerow([repr(p.real), repr(p.imag)])
    return path
