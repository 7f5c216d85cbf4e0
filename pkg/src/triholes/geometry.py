"""Exact spherical geometry primitives.

Angles follow the physics convention: colatitude theta in [0, pi] measured
from the north pole, azimuth phi in [0, 2*pi). All distance-like operations
take the sphere radius R explicitly; caps and triangles store angles only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

# Scalar triple products smaller than this count as "on the plane";
# containment tests treat them as inside (boundary is inclusive).
SIDEDNESS_TIE = 1e-14


class NoIntersectionError(ValueError):
    """A requested cap/circle intersection does not exist."""


def _normalize_azimuth(phi: float) -> float:
    phi = math.fmod(phi, TWO_PI)
    if phi < 0.0:
        phi += TWO_PI
    return phi


@dataclass(frozen=True)
class SphericalPoint:
    """A point on the sphere: colatitude theta, azimuth phi (radians)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"colatitude {self.theta} outside [0, pi]")
        object.__setattr__(self, "phi", _normalize_azimuth(self.phi))

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    @staticmethod
    def from_unit_vector(v) -> "SphericalPoint":
        x, y, z = float(v[0]), float(v[1]), float(v[2])
        theta = math.atan2(math.hypot(x, y), z)
        phi = math.atan2(y, x)
        return SphericalPoint(theta, phi)


@dataclass(frozen=True)
class Cap:
    """Spherical cap: all points within angular distance angular_radius of center."""

    center: SphericalPoint
    angular_radius: float

    def __post_init__(self):
        if not 0.0 < self.angular_radius < math.pi:
            raise ValueError(f"cap angular radius {self.angular_radius} outside (0, pi)")

    def area(self, R: float) -> float:
        return cap_area(self.angular_radius, R)

    def contains(self, p: SphericalPoint, tol: float = 1e-12) -> bool:
        return angular_distance(p, self.center) <= self.angular_radius + tol


def angular_distance(p: SphericalPoint, q: SphericalPoint) -> float:
    """Central angle between two points, in radians.

    Uses the atan2 form, which stays accurate near 0 and pi where a bare
    arccos of the dot product loses digits.
    """
    u, v = p.unit_vector(), q.unit_vector()
    cross = np.cross(u, v)
    return math.atan2(float(np.linalg.norm(cross)), float(np.dot(u, v)))


def great_circle_distance(p: SphericalPoint, q: SphericalPoint, R: float) -> float:
    """Shortest surface distance between p and q on a sphere of radius R."""
    if R <= 0.0:
        raise ValueError("sphere radius must be positive")
    return R * angular_distance(p, q)


def cap_area(psi: float, R: float) -> float:
    """Area of a spherical cap with angular radius psi on a sphere of radius R."""
    if not 0.0 <= psi <= math.pi:
        raise ValueError(f"cap angular radius {psi} outside [0, pi]")
    return TWO_PI * R * R * (1.0 - math.cos(psi))


def geodesic_midpoint(p: SphericalPoint, q: SphericalPoint) -> SphericalPoint:
    u = p.unit_vector() + q.unit_vector()
    n = np.linalg.norm(u)
    if n < 1e-9:
        raise ValueError("midpoint of antipodal points is undefined")
    return SphericalPoint.from_unit_vector(u / n)


@dataclass(frozen=True)
class SphericalTriangle:
    """Spherical triangle spanned by three nodes, bounded by minor arcs.

    Vertices must be pairwise distinct, non-antipodal, and lie within one
    open hemisphere. A consistent interior orientation is fixed at
    construction so the three sidedness tests share one sign convention.
    """

    v0: SphericalPoint
    v1: SphericalPoint
    v2: SphericalPoint
    _orientation: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = [self.v0.unit_vector(), self.v1.unit_vector(), self.v2.unit_vector()]
        for i in range(3):
            for j in range(i + 1, 3):
                d = math.atan2(
                    float(np.linalg.norm(np.cross(vecs[i], vecs[j]))),
                    float(np.dot(vecs[i], vecs[j])),
                )
                if d <= 0.0 or d >= math.pi - 1e-12:
                    raise ValueError("triangle vertices coincident or antipodal")
        det = float(np.dot(np.cross(vecs[0], vecs[1]), vecs[2]))
        # One open hemisphere: some unit vector has positive dot with all
        # three. The normalized sum works whenever the triangle is not
        # hemisphere-spanning.
        s = vecs[0] + vecs[1] + vecs[2]
        ns = np.linalg.norm(s)
        if ns < 1e-12 or any(float(np.dot(s / ns, v)) <= 0.0 for v in vecs):
            raise ValueError("triangle vertices do not lie in one open hemisphere")
        object.__setattr__(self, "_orientation", 1.0 if det >= 0.0 else -1.0)

    def contains(self, p: SphericalPoint) -> bool:
        return point_in_spherical_triangle(p, self)


def point_in_spherical_triangle(N: SphericalPoint, tri: SphericalTriangle) -> bool:
    """True iff N lies in the closed triangle (boundary arcs count as inside)."""
    n = N.unit_vector()
    a, b, c = tri.v0.unit_vector(), tri.v1.unit_vector(), tri.v2.unit_vector()
    s = tri._orientation
    for u, v in ((a, b), (b, c), (c, a)):
        t = s * float(np.dot(np.cross(u, v), n))
        if t < -SIDEDNESS_TIE:
            return False
    return True


def min_enclosing_cap(v0: SphericalPoint, v1: SphericalPoint, v2: SphericalPoint) -> Cap:
    """Smallest cap containing three points of one open hemisphere.

    Two candidates suffice: the diametral cap of the longest edge (two
    support points) and the circumcap through all three. The diametral cap
    wins whenever it already covers the opposite point.
    """
    vecs = np.array([v0.unit_vector(), v1.unit_vector(), v2.unit_vector()])
    center, radius = _enclosing_cap_vectors(vecs[None, :, :])
    return Cap(SphericalPoint.from_unit_vector(center[0]), float(radius[0]))


def _enclosing_cap_vectors(tri_vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched minimal enclosing cap.

    tri_vecs: (m, 3, 3) unit vectors. Returns (centers (m,3), angular radii (m,)).
    Raises on coincident or antipodal vertex pairs.
    """
    a, b, c = tri_vecs[:, 0], tri_vecs[:, 1], tri_vecs[:, 2]
    pairs = [(a, b, c), (b, c, a), (a, c, b)]
    dists = np.empty((tri_vecs.shape[0], 3))
    for k, (u, v, _) in enumerate(pairs):
        cr = np.cross(u, v)
        dists[:, k] = np.arctan2(np.linalg.norm(cr, axis=1), np.einsum("ij,ij->i", u, v))
    if np.any(dists <= 0.0) or np.any(dists >= math.pi - 1e-12):
        raise ValueError("degenerate input: coincident or antipodal points")

    longest = np.argmax(dists, axis=1)
    m = tri_vecs.shape[0]
    u = np.empty((m, 3))
    v = np.empty((m, 3))
    w = np.empty((m, 3))
    for k, (pu, pv, pw) in enumerate(pairs):
        sel = longest == k
        u[sel], v[sel], w[sel] = pu[sel], pv[sel], pw[sel]

    mid = u + v
    mid /= np.linalg.norm(mid, axis=1, keepdims=True)
    half = 0.5 * np.max(dists, axis=1)
    d_third = np.arctan2(
        np.linalg.norm(np.cross(mid, w), axis=1), np.einsum("ij,ij->i", mid, w)
    )
    diametral_ok = d_third <= half * (1.0 + 1e-12) + 1e-15

    # Circumcap: normal of the plane through the three unit vectors,
    # oriented toward the triangle.
    n = np.cross(b - a, c - a)
    nn = np.linalg.norm(n, axis=1, keepdims=True)
    collinear = nn[:, 0] < 1e-300
    if np.any(collinear & ~diametral_ok):
        raise ValueError("degenerate input: collinear points not covered by an edge cap")
    nn[collinear] = 1.0
    n = n / nn
    flip = np.einsum("ij,ij->i", n, a + b + c) < 0.0
    n[flip] *= -1.0
    circ_r = np.arctan2(np.linalg.norm(np.cross(n, a), axis=1), np.einsum("ij,ij->i", n, a))

    centers = np.where(diametral_ok[:, None], mid, n)
    radii = np.where(diametral_ok, half, circ_r)
    return centers, radii


def cap_boundary_colatitude(theta_c: float, psi: float, dphi: float) -> float:
    """Larger colatitude where the boundary of a cap crosses a given meridian.

    The cap is centered at (theta_c, 0) with angular radius psi; dphi is the
    azimuth offset of the meridian. The result theta satisfies the spherical
    law of cosines cos(psi) = cos(theta_c)cos(theta) + sin(theta_c)sin(theta)cos(dphi).
    """
    if not 0.0 < theta_c < math.pi:
        raise ValueError("cap center colatitude must be in (0, pi)")
    if not 0.0 < psi < math.pi:
        raise ValueError("cap angular radius must be in (0, pi)")
    amp = math.sqrt(1.0 - (math.sin(theta_c) * math.sin(dphi)) ** 2)
    ratio = math.cos(psi) / amp
    if ratio > 1.0:
        if ratio > 1.0 + 1e-12:
            raise NoIntersectionError(
                f"cap boundary does not reach azimuth offset {dphi}"
            )
        ratio = 1.0
    return math.acos(max(ratio, -1.0)) + math.atan(math.cos(dphi) * math.tan(theta_c))


def azimuthal_half_width(theta_c: float, psi: float) -> float:
    """Azimuth offset where a cap's boundary crosses the colatitude circle of its center.

    For a cap of angular radius psi centered at (theta_c, 0), returns
    phi_m in (0, pi] with the crossing at (theta_c, phi_m). Requires
    psi <= 2*theta_c, otherwise the cap strictly contains that circle and no
    crossing exists.
    """
    if not 0.0 < theta_c < math.pi / 2:
        raise ValueError("cap center colatitude must be in (0, pi/2)")
    if not 0.0 < psi < math.pi:
        raise ValueError("cap angular radius must be in (0, pi)")
    st2 = math.sin(theta_c) ** 2
    arg = (math.cos(psi) - math.cos(theta_c) ** 2) / st2
    if arg < -1.0:
        if psi > 2.0 * theta_c + 1e-12:
            raise NoIntersectionError(
                f"cap radius {psi} exceeds 2*{theta_c}: no crossing with the colatitude circle"
            )
        arg = -1.0
    return math.acos(min(arg, 1.0))
