"""Translation triangles: vertex images, tangents, interior angles, planarity.

The interior angle at each vertex is measured after translating that
vertex to the origin, where the metric is Euclidean.  Translating vertex
i back yields images of the other two vertices; the unit tangents of the
curves from the origin to those images give the angle.  The six tangents
come in antipodal pairs, which forces the angle sum of every translation
triangle to be at least pi, with equality exactly when the six tangent
endpoints are coplanar on the unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ORIGIN, SolPoint
from .curves import Direction, _invert, params_from_endpoint

__all__ = [
    "Triangle",
    "TriangleReport",
    "normalize",
    "vertex_images",
    "tangent_directions",
    "interior_angles",
    "angle_sum",
    "coplanarity_test",
    "is_coordinate_planar",
    "report",
    "MIN_VERTEX_SEPARATION",
    "COPLANARITY_TOL",
    "SUM_VS_PI_TOL",
    "ANGLE_SUM_FLOOR_TOL",
    "DEGENERATE_ANGLE_TOL",
]

# vertices closer than this in max-norm are rejected as coincident
MIN_VERTEX_SEPARATION = 1e-10

# coupled tolerance pair: angle sum equals pi exactly when the tangent
# endpoints are coplanar, which floating point can only witness in bands
COPLANARITY_TOL = 1e-8
SUM_VS_PI_TOL = 1e-7

# slack allowed below pi before the angle-sum floor is considered violated
ANGLE_SUM_FLOOR_TOL = 1e-9

# a tangent pair within this of parallel marks the report as degenerate
DEGENERATE_ANGLE_TOL = 1e-10

# tangent keys: "t<i><j>" is the unit tangent toward the image of vertex i
# after translating vertex j to the origin (j = 0 means no translation)
TANGENT_KEYS = ("t20", "t30", "t12", "t32", "t13", "t23")


@dataclass(frozen=True)
class Triangle:
    """Three pairwise-distinct vertices joined by translation-curve sides."""

    a1: SolPoint
    a2: SolPoint
    a3: SolPoint

    def __post_init__(self) -> None:
        for p, q, name in (
            (self.a1, self.a2, "a1/a2"),
            (self.a1, self.a3, "a1/a3"),
            (self.a2, self.a3, "a2/a3"),
        ):
            sep = max(abs(p.x - q.x), abs(p.y - q.y), abs(p.z - q.z))
            if sep <= MIN_VERTEX_SEPARATION:
                raise ValueError(f"degenerate triangle: vertices {name} coincide (separation {sep:.3e})")

    def vertices(self) -> tuple[SolPoint, SolPoint, SolPoint]:
        return (self.a1, self.a2, self.a3)


@dataclass(frozen=True)
class TriangleReport:
    """Full record of the angle computation for one triangle."""

    vertices: tuple[SolPoint, SolPoint, SolPoint]  # normalized, a1 = origin
    images: dict[str, SolPoint]
    tangents: dict[str, tuple[float, float, float]]
    omega1: float
    omega2: float
    omega3: float
    angle_sum: float
    excess: float
    coplanar: bool
    coplanarity_residual: float
    side_lengths: dict[str, float]
    degenerate: bool

    def angles(self) -> tuple[float, float, float]:
        return (self.omega1, self.omega2, self.omega3)


def normalize(tri: Triangle) -> Triangle:
    """Translate the triangle so that its first vertex is the origin."""
    a1 = tri.a1
    if a1 == ORIGIN:
        return tri
    ez = math.exp(a1.z)
    ezi = math.exp(-a1.z)

    def move(p: SolPoint) -> SolPoint:
        return SolPoint((p.x - a1.x) * ez, (p.y - a1.y) * ezi, p.z - a1.z)

    return Triangle(ORIGIN, move(tri.a2), move(tri.a3))


def vertex_images(tri: Triangle) -> dict[str, SolPoint]:
    """Vertex images after translating each non-origin vertex back to the origin.

    Key "a<i><j>" is the image of vertex i under the inverse translation of
    vertex j; "a20"/"a30" are the (normalized) vertices themselves.
    """
    tri = normalize(tri)
    x2, y2, z2 = tri.a2.as_tuple()
    x3, y3, z3 = tri.a3.as_tuple()
    e2, e2i = math.exp(z2), math.exp(-z2)
    e3, e3i = math.exp(z3), math.exp(-z3)
    return {
        "a20": tri.a2,
        "a30": tri.a3,
        "a12": SolPoint(-x2 * e2, -y2 * e2i, -z2),
        "a32": SolPoint((x3 - x2) * e2, (y3 - y2) * e2i, z3 - z2),
        "a13": SolPoint(-x3 * e3, -y3 * e3i, -z3),
        "a23": SolPoint((x2 - x3) * e3, (y2 - y3) * e3i, z2 - z3),
    }


def _unit_tangent(p: SolPoint) -> tuple[float, float, float]:
    phi, theta, _ = _invert(p.x, p.y, p.z)
    return Direction(phi, theta).unit_vector()


def tangent_directions(tri: Triangle) -> dict[str, tuple[float, float, float]]:
    """Unit tangents at the origin of the curves toward each vertex image."""
    images = vertex_images(tri)
    return {"t" + key[1:]: _unit_tangent(p) for key, p in images.items()}


def _vec_angle(u, v) -> float:
    d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    return math.acos(min(1.0, max(-1.0, d)))


def interior_angles(tri: Triangle) -> tuple[float, float, float]:
    """Interior angles (omega1, omega2, omega3), each in [0, pi].

    Angles are Euclidean between outgoing unit tangents at the origin:
    omega_i is measured after vertex i has been translated there.
    Collinear configurations yield angles of 0 or pi and are reported,
    not rejected.
    """
    t = tangent_directions(tri)
    return (
        _vec_angle(t["t20"], t["t30"]),
        _vec_angle(t["t12"], t["t32"]),
        _vec_angle(t["t13"], t["t23"]),
    )


def angle_sum(tri: Triangle) -> float:
    """Interior angle sum omega1 + omega2 + omega3 (always >= pi)."""
    w1, w2, w3 = interior_angles(tri)
    return w1 + w2 + w3


def coplanarity_test(tri: Triangle) -> tuple[bool, float]:
    """Whether the six unit-tangent endpoints lie in one Euclidean plane.

    Returns (coplanar, residual) where the residual is the smallest
    singular value of the centered 6x3 matrix of tangent endpoints.
    Coplanarity is equivalent to the angle sum being exactly pi.
    """
    t = tangent_directions(tri)
    m = np.array([t[k] for k in TANGENT_KEYS])
    m -= m.mean(axis=0)
    residual = float(np.linalg.svd(m, compute_uv=False)[-1])
    return residual < COPLANARITY_TOL, residual


def is_coordinate_planar(tri: Triangle) -> bool:
    """True if all three vertices share an x, y, or z coordinate to 1e-12.

    Checked on the vertices as given, so it recognizes triangles in planes
    parallel to the coordinate planes as well.
    """
    for coords in zip(*(v.as_tuple() for v in tri.vertices())):
        if max(coords) - min(coords) <= 1e-12:
            return True
    return False


def report(tri: Triangle) -> TriangleReport:
    """Normalize, compute images, tangents, angles, planarity and side lengths."""
    tri = normalize(tri)
    images = vertex_images(tri)
    tangents = {"t" + key[1:]: _unit_tangent(p) for key, p in images.items()}
    w1 = _vec_angle(tangents["t20"], tangents["t30"])
    w2 = _vec_angle(tangents["t12"], tangents["t32"])
    w3 = _vec_angle(tangents["t13"], tangents["t23"])
    total = w1 + w2 + w3
    if total < math.pi - ANGLE_SUM_FLOOR_TOL:
        raise RuntimeError(f"angle-sum floor violated: {total!r} < pi for {tri}")
    coplanar, residual = coplanarity_test(tri)
    degenerate = any(w < DEGENERATE_ANGLE_TOL or w > math.pi - DEGENERATE_ANGLE_TOL for w in (w1, w2, w3))
    side_lengths = {
        "d12": params_from_endpoint(images["a20"]).t,
        "d13": params_from_endpoint(images["a30"]).t,
        "d23": params_from_endpoint(images["a32"]).t,
    }
    return TriangleReport(
        vertices=tri.vertices(),
        images=images,
        tangents=tangents,
        omega1=w1,
        omega2=w2,
        omega3=w3,
        angle_sum=total,
        excess=total - math.pi,
        coplanar=coplanar,
        coplanarity_residual=residual,
        side_lengths=side_lengths,
        degenerate=degenerate,
    )
