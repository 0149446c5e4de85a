"""Hyperbolic geometry of the unit disk.

Points of the hyperbolic plane are plain complex numbers z with |z| < 1.
Geodesics are circular arcs orthogonal to the unit circle (or diameters),
distances come from the standard Poincare metric, and polygons are closed
chains of geodesic arcs.  Everything here is exact geometry; no solver
machinery.

Polygon area is computed by fan triangulation from the origin, which is
valid exactly for polygons starlike with respect to 0; starlikeness is
verified numerically on a dense angular grid at construction time.
Triangle measures are also available position-free (law of cosines on the
three side lengths), which works for any nondegenerate triangle whether
or not it surrounds the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "GeometryError",
    "GeodesicArc",
    "HypDisk",
    "HypPolygon",
    "PolygonMeasures",
    "TriangleMeasures",
    "equilateral_triangle_radius",
    "geodesic_arc",
    "hyp_disk_area",
    "hyp_disk_perimeter",
    "hyp_disk_to_euclid",
    "hyp_dist",
    "hyp_midpoint",
    "mobius",
    "polygon_measures",
    "polygon_perimeter",
    "regular_polygon",
    "regular_radius_from_area",
    "regular_radius_from_perimeter",
    "triangle_measures",
]

# normalized-cross-product threshold separating diametral segments from
# genuine circular arcs; below double-precision geometry noise
_COLLINEAR_TOL = 1e-14


class GeometryError(ValueError):
    """Invalid hyperbolic-geometric configuration."""


def _check_in_disk(z: complex, name: str = "point") -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise GeometryError(f"{name} {z} is not inside the unit disk")
    return z


def hyp_dist(x: complex, y: complex) -> float:
    """Hyperbolic (Poincare) distance between two points of the disk.

    rho = 2 arsh( |x - y| / sqrt((1 - |x|^2)(1 - |y|^2)) )
    """
    x = _check_in_disk(x, "x")
    y = _check_in_disk(y, "y")
    num = abs(x - y)
    den = math.sqrt((1.0 - abs(x) ** 2) * (1.0 - abs(y) ** 2))
    return 2.0 * math.asinh(num / den)


def mobius(a: complex, z):
    """Disk automorphism T_a(z) = (z - a) / (1 - conj(a) z).

    Sends a to 0 and preserves hyperbolic distance; z may be a complex
    scalar or a numpy array of points in the disk.
    """
    a = _check_in_disk(a, "a")
    z = np.asarray(z, dtype=complex) if isinstance(z, np.ndarray) else complex(z)
    if isinstance(z, np.ndarray):
        if np.any(np.abs(z) >= 1.0):
            raise GeometryError("mobius input outside the unit disk")
        return (z - a) / (1.0 - np.conj(a) * z)
    _check_in_disk(z, "z")
    return (z - a) / (1.0 - a.conjugate() * z)


def hyp_midpoint(x: complex, y: complex) -> complex:
    """Hyperbolic midpoint of the geodesic segment from x to y."""
    x = _check_in_disk(x, "x")
    y = _check_in_disk(y, "y")
    w = mobius(x, y)  # y moved to a radial point, x to 0
    if w == 0:
        return x
    t = math.tanh(0.5 * math.atanh(abs(w)))
    m = t * w / abs(w)
    # inverse of T_x
    return (m + x) / (1.0 + x.conjugate() * m)


@dataclass(frozen=True)
class HypDisk:
    """Hyperbolic disk B_rho(center, radius), radius > 0."""

    center: complex
    radius: float

    def __post_init__(self):
        _check_in_disk(self.center, "center")
        if self.radius <= 0.0:
            raise GeometryError(f"hyperbolic radius must be positive, got {self.radius}")


def hyp_disk_to_euclid(d: HypDisk) -> tuple[complex, float]:
    """Euclidean center and radius of a hyperbolic disk.

    With t = th(M/2):  y = x (1 - t^2) / (1 - |x|^2 t^2),
    r_e = (1 - |x|^2) t / (1 - |x|^2 t^2).
    """
    x = complex(d.center)
    t = math.tanh(0.5 * d.radius)
    den = 1.0 - (abs(x) * t) ** 2
    y = x * (1.0 - t * t) / den
    r_e = (1.0 - abs(x) ** 2) * t / den
    return y, r_e


def hyp_disk_area(L: float) -> float:
    """Hyperbolic area 4 pi sh^2(L/2) of a disk of hyperbolic radius L."""
    if L <= 0.0:
        raise GeometryError(f"hyperbolic radius must be positive, got {L}")
    return 4.0 * math.pi * math.sinh(0.5 * L) ** 2


def hyp_disk_perimeter(L: float) -> float:
    """Hyperbolic perimeter 2 pi sh(L) of a circle of hyperbolic radius L."""
    if L <= 0.0:
        raise GeometryError(f"hyperbolic radius must be positive, got {L}")
    return 2.0 * math.pi * math.sinh(L)


@dataclass(frozen=True)
class GeodesicArc:
    """One geodesic side: a circular arc orthogonal to the unit circle,
    or a diametral straight segment.  Oriented from z1 to z2; point(0) = z1
    and point(1) = z2, with the parameter proportional to arc length."""

    kind: str  # "circular" or "segment"
    z1: complex
    z2: complex
    center: complex | None = None
    radius: float | None = None
    theta1: float | None = None
    dtheta: float | None = None

    def point(self, t):
        """Point(s) on the arc at parameter t in [0, 1] (scalar or array)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "segment":
            return self.z1 + t * (self.z2 - self.z1)
        return self.center + self.radius * np.exp(1j * (self.theta1 + t * self.dtheta))

    def tangent(self, t):
        """Unit tangent(s) in the direction of traversal."""
        t = np.asarray(t, dtype=float)
        if self.kind == "segment":
            d = self.z2 - self.z1
            d /= abs(d)
            return np.broadcast_to(d, t.shape).copy() if t.shape else d
        ang = self.theta1 + t * self.dtheta
        return 1j * math.copysign(1.0, self.dtheta) * np.exp(1j * ang)

    def euclid_length(self) -> float:
        if self.kind == "segment":
            return abs(self.z2 - self.z1)
        return abs(self.dtheta) * self.radius

    def orthogonality_residual(self) -> float:
        """| |c|^2 - R^2 - 1 | for circular arcs, 0 for segments."""
        if self.kind == "segment":
            return 0.0
        return abs(abs(self.center) ** 2 - self.radius**2 - 1.0)


def geodesic_arc(z1: complex, z2: complex) -> GeodesicArc:
    """Geodesic segment between two distinct points of the disk.

    Collinear-with-origin pairs give a straight segment; otherwise the
    unique circle through z1, z2 with |c|^2 = R^2 + 1 is found from the
    2x2 linear system 2 Re(conj(z) c) = |z|^2 + 1 and the sub-arc inside
    the disk is returned.
    """
    z1 = _check_in_disk(z1, "z1")
    z2 = _check_in_disk(z2, "z2")
    if z1 == z2:
        raise GeometryError(f"degenerate arc: equal endpoints {z1}")
    cross = abs((z1.conjugate() * z2).imag)
    if cross <= _COLLINEAR_TOL * max(abs(z1) * abs(z2), 1e-300):
        return GeodesicArc(kind="segment", z1=z1, z2=z2)
    # solve 2(x_k a + y_k b) = |z_k|^2 + 1 for c = a + i b
    r1 = abs(z1) ** 2 + 1.0
    r2 = abs(z2) ** 2 + 1.0
    det = 2.0 * (z1.real * z2.imag - z1.imag * z2.real)
    a = (r1 * z2.imag - r2 * z1.imag) / det
    b = (r2 * z1.real - r1 * z2.real) / det
    c = complex(a, b)
    radius = abs(z1 - c)
    th1 = cmath.phase(z1 - c)
    th2 = cmath.phase(z2 - c)
    dth = math.remainder(th2 - th1, 2.0 * math.pi)  # short way, |dth| < pi
    return GeodesicArc(
        kind="circular", z1=z1, z2=z2, center=c, radius=radius, theta1=th1, dtheta=dth
    )


@dataclass(frozen=True)
class TriangleMeasures:
    """Side lengths, angles, area, and perimeter of a hyperbolic triangle.

    sides[i] is opposite vertices[i]; angles[i] sits at vertices[i];
    area is the angle defect pi - sum(angles)."""

    sides: tuple[float, float, float]
    angles: tuple[float, float, float]
    area: float
    perimeter: float


def _angle_from_sides(a: float, b: float, c: float) -> float:
    """Angle opposite side a by the hyperbolic law of cosines."""
    num = math.cosh(b) * math.cosh(c) - math.cosh(a)
    den = math.sinh(b) * math.sinh(c)
    if den == 0.0:
        raise GeometryError("degenerate triangle: zero side length")
    return math.acos(min(1.0, max(-1.0, num / den)))


def triangle_measures(v1: complex, v2: complex, v3: complex) -> TriangleMeasures:
    """Measures of the geodesic triangle with the given vertices.

    Position-free: everything is derived from the three pairwise
    distances, so the triangle need not contain the origin.
    """
    A = hyp_dist(v2, v3)
    B = hyp_dist(v1, v3)
    C = hyp_dist(v1, v2)
    s1 = _angle_from_sides(A, B, C)
    s2 = _angle_from_sides(B, C, A)
    s3 = _angle_from_sides(C, A, B)
    area = math.pi - (s1 + s2 + s3)
    if area <= 0.0:
        raise GeometryError("degenerate triangle: nonpositive angle defect")
    return TriangleMeasures(
        sides=(A, B, C), angles=(s1, s2, s3), area=area, perimeter=A + B + C
    )


class PolygonMeasures(NamedTuple):
    area: float
    perimeter: float
    angles: list[float]


@dataclass(frozen=True)
class HypPolygon:
    """Closed hyperbolic polygon, counterclockwise, starlike about 0.

    Construct through from_vertices (which normalizes orientation and
    runs the starlike check) or regular_polygon.
    """

    vertices: tuple[complex, ...]
    sides: tuple[GeodesicArc, ...]
    starlike_checked: bool = True

    @property
    def m(self) -> int:
        return len(self.vertices)

    @staticmethod
    def from_vertices(vertices, samples_per_side: int | None = None) -> "HypPolygon":
        vs = [_check_in_disk(v, f"vertex {k}") for k, v in enumerate(vertices)]
        m = len(vs)
        if m < 3:
            raise GeometryError(f"polygon needs at least 3 vertices, got {m}")
        for v in vs:
            if v == 0:
                raise GeometryError("vertex at the origin breaks the fan triangulation")
        for k in range(m):
            if vs[k] == vs[(k + 1) % m]:
                raise GeometryError(f"consecutive vertices {k} and {(k + 1) % m} coincide")
        # orientation from the winding of the vertex loop about 0
        winding = sum(
            math.remainder(cmath.phase(vs[(k + 1) % m]) - cmath.phase(vs[k]), 2 * math.pi)
            for k in range(m)
        )
        if winding < 0:
            vs = vs[::-1]
        sides = tuple(geodesic_arc(vs[k], vs[(k + 1) % m]) for k in range(m))
        poly = HypPolygon(vertices=tuple(vs), sides=sides)
        poly._verify_starlike(samples_per_side)
        return poly

    def _verify_starlike(self, samples_per_side: int | None = None) -> None:
        """Each ray from 0 must cross the boundary exactly once, i.e. the
        boundary angle is strictly monotone with total increase 2 pi;
        sampled on a dense angular grid (>= 720 points total)."""
        k = samples_per_side or max(16, -(-720 // self.m))
        # a segment side is collinear with 0, so some ray meets the
        # boundary in a whole segment or the origin is on the boundary
        if any(side.kind == "segment" for side in self.sides):
            raise GeometryError("polygon has a radial side; not starlike about 0")
        t = np.arange(1, k + 1) / k
        pts = np.concatenate(
            [np.array([complex(self.vertices[0])])] + [side.point(t) for side in self.sides]
        )
        if np.max(np.abs(pts)) >= 1.0:
            raise GeometryError("polygon boundary leaves the unit disk")
        ang = np.unwrap(np.angle(pts))
        if np.min(np.diff(ang)) < -1e-12:
            raise GeometryError("polygon is not starlike with respect to 0")
        if abs((ang[-1] - ang[0]) - 2.0 * math.pi) > 1e-6:
            raise GeometryError("polygon boundary does not wind once around 0")


def regular_polygon(m: int, r: float) -> HypPolygon:
    """Regular hyperbolic m-gon with vertices r exp(2 pi i k / m)."""
    if m < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {m}")
    if not 0.0 < r < 1.0:
        raise GeometryError(f"vertex radius must be in (0, 1), got {r}")
    vs = [r * cmath.exp(2j * math.pi * k / m) for k in range(m)]
    return HypPolygon.from_vertices(vs)


def polygon_perimeter(p: HypPolygon) -> float:
    """Sum of the hyperbolic side lengths."""
    m = p.m
    return sum(hyp_dist(p.vertices[k], p.vertices[(k + 1) % m]) for k in range(m))


def polygon_measures(p: HypPolygon) -> PolygonMeasures:
    """Area, perimeter, and interior vertex angles by fan triangulation.

    The fan {0, v_k, v_{k+1}} tiles the polygon because it is starlike
    about 0; each fan triangle is measured by the law of cosines and the
    vertex angles are assembled from the two adjacent fan triangles.
    """
    if not p.starlike_checked:
        raise GeometryError("polygon_measures requires a starlike polygon")
    m = p.m
    vs = p.vertices
    if any(v == 0 for v in vs):
        raise GeometryError("vertex at the origin breaks the fan triangulation")
    radial = [hyp_dist(0.0, v) for v in vs]
    area = 0.0
    perimeter = 0.0
    # angle contributions at v_k: [k][0] from fan triangle k (at its first
    # vertex), [k][1] from fan triangle k-1 (at its second vertex)
    at_first = [0.0] * m
    at_second = [0.0] * m
    for k in range(m):
        k1 = (k + 1) % m
        side = hyp_dist(vs[k], vs[k1])
        a, b = radial[k], radial[k1]
        # fan triangle (0, v_k, v_k1): sides opposite are side, b, a
        ang0 = _angle_from_sides(side, a, b)
        angk = _angle_from_sides(b, side, a)
        angk1 = _angle_from_sides(a, b, side)
        defect = math.pi - (ang0 + angk + angk1)
        if defect <= 0.0:
            raise GeometryError("degenerate fan triangle in polygon_measures")
        area += defect
        perimeter += side
        at_first[k] = angk
        at_second[k1] = angk1
    angles = [at_first[k] + at_second[k] for k in range(m)]
    return PolygonMeasures(area=area, perimeter=perimeter, angles=angles)


def equilateral_triangle_radius(omega: float) -> float:
    """Vertex radius r of the equilateral triangle with interior angle omega.

    The triangle r, r e^{2 pi i/3}, r e^{4 pi i/3} has all angles omega
    exactly when r^2 = (2 - cos w - sqrt(3) sin w) / (2 cos w - 1), the
    form consistent with the limits r -> 1 as w -> 0 and r -> 0 as
    w -> pi/3.
    """
    if not 0.0 < omega < math.pi / 3.0:
        raise GeometryError(f"equilateral angle must lie in (0, pi/3), got {omega}")
    num = 2.0 - math.cos(omega) - math.sqrt(3.0) * math.sin(omega)
    den = 2.0 * math.cos(omega) - 1.0
    return math.sqrt(max(num, 0.0) / den)


def regular_radius_from_perimeter(m: int, L: float) -> float:
    """Vertex radius of the regular m-gon with hyperbolic perimeter L.

    Stable rearrangement of r = (-sin(pi/m) + sqrt(sin^2(pi/m) +
    sh^2(L/2m))) / sh(L/2m).
    """
    if m < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {m}")
    if L <= 0.0:
        raise GeometryError(f"perimeter must be positive, got {L}")
    s = math.sinh(0.5 * L / m)
    a = math.sin(math.pi / m)
    return s / (a + math.hypot(a, s))


def _regular_area(m: int, r: float) -> float:
    """Area of the regular m-gon with vertex radius r (fan closed form)."""
    rho = 2.0 * math.atanh(r)
    side = 2.0 * math.asinh(2.0 * r * math.sin(math.pi / m) / (1.0 - r * r))
    ang0 = _angle_from_sides(side, rho, rho)
    base = _angle_from_sides(rho, side, rho)
    return m * (math.pi - ang0 - 2.0 * base)


def regular_radius_from_area(m: int, c: float) -> float:
    """Vertex radius of the regular m-gon with hyperbolic area c.

    No closed form; bracketed root find on the strictly increasing map
    r -> area(m, r), whose range is (0, (m-2) pi).
    """
    if m < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {m}")
    if not 0.0 < c < (m - 2) * math.pi:
        raise GeometryError(f"area {c} outside the attainable range (0, {(m - 2) * math.pi})")
    lo, hi = 1e-12, 1.0 - 1e-12
    if _regular_area(m, hi) < c:
        raise GeometryError(f"area {c} not attainable below the ideal polygon limit")
    r = brentq(lambda x: _regular_area(m, x) - c, lo, hi, xtol=1e-15, rtol=8.9e-16)
    return float(r)
