"""Points, isometries, and the metric of the Sol homogeneous space.

The model is R^3 with group law (a,b,c)*(x,y,z) = (x + a e^-z, y + b e^z,
z + c) and left-invariant metric ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2.
Isometries are 4x4 matrices acting on homogeneous row vectors (1, x, y, z)
by right multiplication: translations carry the origin to any point, and
an 8-element dihedral group fixes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ORIGIN",
    "SolPoint",
    "SolIsometry",
    "MetricTensor",
    "group_multiply",
    "group_inverse",
    "translation_to",
    "apply",
    "conjugate",
    "stabilizer_generators",
    "stabilizer_elements",
    "sol_angle",
]

Vec3 = tuple[float, float, float]

# apply() rejects matrices whose image has homogeneous coordinate != 1
HOMOGENEOUS_TOL = 1e-12


@dataclass(frozen=True)
class SolPoint:
    """Point of Sol in affine coordinates; homogeneous form is (1, x, y, z)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"coordinates must be finite, got {name}={value!r}")
            object.__setattr__(self, name, value)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def as_tuple(self) -> Vec3:
        return (self.x, self.y, self.z)


ORIGIN = SolPoint(0.0, 0.0, 0.0)


def group_multiply(a: SolPoint, b: SolPoint) -> SolPoint:
    """Group product a*b, i.e. the right translation of a by b."""
    return SolPoint(
        b.x + a.x * math.exp(-b.z),
        b.y + a.y * math.exp(b.z),
        b.z + a.z,
    )


def group_inverse(p: SolPoint) -> SolPoint:
    """The group inverse (-x e^z, -y e^-z, -z) of p."""
    return SolPoint(-p.x * math.exp(p.z), -p.y * math.exp(-p.z), -p.z)


def conjugate(t: SolPoint, by: SolPoint) -> SolPoint:
    """Conjugate by^-1 * t * by; the third coordinate of t is preserved exactly."""
    a, b, c = t.x, t.y, t.z
    x, y, z = by.x, by.y, by.z
    return SolPoint(
        x * -math.expm1(-c) + a * math.exp(-z),
        y * -math.expm1(c) + b * math.exp(z),
        c,
    )


@dataclass(frozen=True, eq=False)
class SolIsometry:
    """4x4 collineation acting on homogeneous row vectors from the right.

    kind is "translation" for matrices produced by translation_to (first
    row (1,x,y,z), diagonal (1, e^-z, e^z, 1)), "stabilizer" for the
    origin-fixing collineations, and "composite" for anything built by
    composition or generic inversion.
    """

    matrix: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"isometry matrix must be 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("isometry matrix must be finite")
        if np.linalg.det(m) == 0.0:
            raise ValueError("isometry matrix is singular")
        if self.kind not in ("translation", "stabilizer", "composite"):
            raise ValueError(f"unknown isometry kind {self.kind!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> SolIsometry:
        if self.kind == "translation":
            p = SolPoint(self.matrix[0, 1], self.matrix[0, 2], self.matrix[0, 3])
            return translation_to(group_inverse(p))
        if self.kind == "stabilizer":
            # signed permutation, so the inverse is the transpose
            return SolIsometry(self.matrix.T, "stabilizer")
        return SolIsometry(np.linalg.inv(self.matrix), "composite")

    def compose(self, other: SolIsometry) -> SolIsometry:
        """Isometry acting as self first, then other."""
        return SolIsometry(self.matrix @ other.matrix, "composite")

    __matmul__ = compose


def translation_to(p: SolPoint) -> SolIsometry:
    """The translation carrying the origin to p (right action of p on Sol)."""
    m = np.eye(4)
    m[0, 1] = p.x
    m[0, 2] = p.y
    m[0, 3] = p.z
    m[1, 1] = math.exp(-p.z)
    m[2, 2] = math.exp(p.z)
    return SolIsometry(m, "translation")


def apply(iso: SolIsometry, p: SolPoint) -> SolPoint:
    """Image of p under iso: the row vector (1, x, y, z) times the matrix."""
    m = iso.matrix
    w = m[0, 0] + p.x * m[1, 0] + p.y * m[2, 0] + p.z * m[3, 0]
    if abs(w - 1.0) > HOMOGENEOUS_TOL:
        raise ValueError(f"malformed isometry: homogeneous coordinate of image is {w!r}")
    x = m[0, 1] + p.x * m[1, 1] + p.y * m[2, 1] + p.z * m[3, 1]
    y = m[0, 2] + p.x * m[1, 2] + p.y * m[2, 2] + p.z * m[3, 2]
    z = m[0, 3] + p.x * m[1, 3] + p.y * m[2, 3] + p.z * m[3, 3]
    if w != 1.0:
        x, y, z = x / w, y / w, z / w
    return SolPoint(x, y, z)


def _collineation(block) -> SolIsometry:
    m = np.eye(4)
    m[1:, 1:] = block
    return SolIsometry(m, "stabilizer")


def stabilizer_generators() -> tuple[SolIsometry, SolIsometry]:
    """The two involutions generating the origin stabilizer.

    The first flips y; the second swaps x with y and flips z.  Their
    product has order 4, so together they generate a dihedral group D4.
    """
    flip_y = _collineation([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    swap_xy = _collineation([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    return flip_y, swap_xy


def stabilizer_elements() -> list[SolIsometry]:
    """All 8 elements of the dihedral origin stabilizer."""
    flip_y, swap_xy = stabilizer_generators()
    rot = flip_y.matrix @ swap_xy.matrix  # order-4 rotation
    elements = []
    power = np.eye(4)
    for _ in range(4):
        elements.append(SolIsometry(power, "stabilizer"))
        elements.append(SolIsometry(flip_y.matrix @ power, "stabilizer"))
        power = power @ rot
    return elements


@dataclass(frozen=True)
class MetricTensor:
    """Diagonal metric (e^{2z}, e^{-2z}, 1) of Sol at a base point.

    At z = 0 this is the Euclidean identity, which is why angles measured
    at the origin of the model are ordinary Euclidean angles.
    """

    diagonal: Vec3

    def __post_init__(self) -> None:
        if any(g <= 0.0 or not math.isfinite(g) for g in self.diagonal):
            raise ValueError(f"metric diagonal must be positive finite, got {self.diagonal}")

    @classmethod
    def at(cls, p: SolPoint) -> MetricTensor:
        return cls((math.exp(2.0 * p.z), math.exp(-2.0 * p.z), 1.0))

    def inner(self, u, v) -> float:
        gx, gy, gz = self.diagonal
        return gx * u[0] * v[0] + gy * u[1] * v[1] + gz * u[2] * v[2]

    def norm(self, v) -> float:
        return math.sqrt(self.inner(v, v))

    def as_matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)


def sol_angle(u, v, at: SolPoint) -> float:
    """Riemannian angle in [0, pi] between tangent vectors u, v at a point."""
    g = MetricTensor.at(at)
    uu = g.inner(u, u)
    vv = g.inner(v, v)
    if uu == 0.0 or vv == 0.0:
        raise ValueError("angle undefined for a zero tangent vector")
    c = g.inner(u, v) / math.sqrt(uu * vv)
    return math.acos(min(1.0, max(-1.0, c)))
