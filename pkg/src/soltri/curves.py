"""Translation curves from the origin: evaluation, inversion, arc length.

A unit tangent (u, v, w) chosen at the origin is dragged along by right
translations; the curve following it solves xdot = u e^-z, ydot = v e^z,
zdot = w and has a closed form.  Because the curve is unit speed, its
parameter is arc length, which makes the inverse problem (which curve
reaches a given point, and after how long) the basis of the translation
distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ORIGIN, SolPoint

__all__ = [
    "Direction",
    "CurveParams",
    "curve_point",
    "curve_tangent",
    "params_from_endpoint",
    "endpoint_branch",
    "translation_distance",
    "sample_curve",
    "PARAMS_RESIDUAL_TOL",
    "POINT_EQUALITY_TOL",
]

HALF_PI = math.pi / 2.0

# forward residual accepted when screening inverse-parameter branches,
# relative to the endpoint's coordinate scale
PARAMS_RESIDUAL_TOL = 1e-10

# two points closer than this (per coordinate) are treated as equal
POINT_EQUALITY_TOL = 1e-12


@dataclass(frozen=True)
class Direction:
    """Starting direction of a unit-speed translation curve.

    The tangent at the origin is (cos theta cos phi, cos theta sin phi,
    sin theta), with phi in [-pi, pi] and theta in [-pi/2, pi/2].
    """

    phi: float
    theta: float

    def __post_init__(self) -> None:
        phi = float(self.phi)
        theta = float(self.theta)
        if not (math.isfinite(phi) and -math.pi <= phi <= math.pi):
            raise ValueError(f"phi must lie in [-pi, pi], got {phi!r}")
        if not (math.isfinite(theta) and -HALF_PI <= theta <= HALF_PI):
            raise ValueError(f"theta must lie in [-pi/2, pi/2], got {theta!r}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)

    def unit_vector(self) -> tuple[float, float, float]:
        if abs(self.theta) == HALF_PI:
            return (0.0, 0.0, math.copysign(1.0, self.theta))
        ct = math.cos(self.theta)
        return (ct * math.cos(self.phi), ct * math.sin(self.phi), math.sin(self.theta))

    @classmethod
    def from_vector(cls, u: float, v: float, w: float) -> Direction:
        """Direction of an arbitrary nonzero tangent vector at the origin."""
        n = math.sqrt(u * u + v * v + w * w)
        if n == 0.0:
            raise ValueError("direction undefined for the zero vector")
        phi = math.atan2(v, u) if (u != 0.0 or v != 0.0) else 0.0
        theta = math.asin(min(1.0, max(-1.0, w / n)))
        return cls(phi, theta)


@dataclass(frozen=True)
class CurveParams:
    """A translation-curve segment: direction plus arc length t >= 0."""

    direction: Direction
    t: float

    def __post_init__(self) -> None:
        t = float(self.t)
        if not math.isfinite(t) or t < 0.0:
            raise ValueError(f"arc length must be finite and >= 0, got {t!r}")
        object.__setattr__(self, "t", t)

    @property
    def phi(self) -> float:
        return self.direction.phi

    @property
    def theta(self) -> float:
        return self.direction.theta

    @classmethod
    def from_angles(cls, phi: float, theta: float, t: float) -> CurveParams:
        return cls(Direction(phi, theta), t)


def _forward(phi: float, theta: float, t: float) -> tuple[float, float, float]:
    if theta == 0.0:
        return (t * math.cos(phi), t * math.sin(phi), 0.0)
    if abs(theta) == HALF_PI:
        return (0.0, 0.0, math.copysign(t, theta))
    w = math.sin(theta)
    zt = t * w
    cot = math.cos(theta) / w
    return (
        -cot * math.cos(phi) * math.expm1(-zt),
        cot * math.sin(phi) * math.expm1(zt),
        zt,
    )


def curve_point(p: CurveParams) -> SolPoint:
    """Endpoint of the curve segment with the given direction and arc length."""
    return SolPoint(*_forward(p.phi, p.theta, p.t))


def curve_tangent(p: CurveParams) -> tuple[float, float, float]:
    """Tangent vector (u e^-z, v e^z, w) at the endpoint of the segment."""
    u, v, w = p.direction.unit_vector()
    zt = p.t * w
    return (u * math.exp(-zt), v * math.exp(zt), w)


def endpoint_branch(p: SolPoint) -> str:
    """Which closed-form inversion applies: "generic", "y0", "z0" or "axis"."""
    if p.z == 0.0:
        return "z0"
    if p.x == 0.0 and p.y == 0.0:
        return "axis"
    if p.y == 0.0:
        return "y0"
    return "generic"


def _principal_arccot_cs(cot: float) -> tuple[float, float]:
    # (cos, sin) of the principal arccot in (0, pi), computed without
    # evaluating trig at a rounded angle
    if math.isinf(cot):
        return (math.copysign(1.0, cot), 0.0)
    h = math.hypot(1.0, cot)
    return (cot / h, 1.0 / h)


def _invert(x: float, y: float, z: float) -> tuple[float, float, float]:
    """Solve for (phi, theta, t) with t > 0 reaching (x, y, z) != origin.

    The closed forms determine cot(phi) and cot(theta) only up to the
    arccot branch, so each candidate is kept as exact (cos, sin) pairs
    and screened by forward evaluation; the branch reproducing the input
    wins.  Exactly one candidate survives for every nonorigin point.
    """
    if x == 0.0 and y == 0.0:
        if z == 0.0:
            raise ValueError("translation-curve parameters are undefined at the origin")
        # vertical axis: the only curve through (0, 0, z) is the pole one
        return (0.0, math.copysign(HALF_PI, z), abs(z))

    candidates: list[tuple[float, float, float, float, float]]
    if z == 0.0:
        # base plane is Euclidean: straight line of length hypot(x, y)
        t = math.hypot(x, y)
        cp, sp = x / t, abs(y) / t
        candidates = [(cp, sp, 1.0, 0.0, t), (cp, -sp, 1.0, 0.0, t)]
    else:
        em_neg = math.expm1(-z)
        em_pos = math.expm1(z)
        if y == 0.0:
            phi_pairs = ((1.0, 0.0, -x / em_neg), (-1.0, 0.0, x / em_neg))
        else:
            cp, sp = _principal_arccot_cs(-(x / y) * (em_pos / em_neg))
            phi_pairs = ((cp, sp, None), (-cp, -sp, None))
        candidates = []
        for cp, sp, cot_theta in phi_pairs:
            if cot_theta is None:
                if sp == 0.0:
                    continue
                cot_theta = y / (sp * em_pos)
            ct0, st0 = _principal_arccot_cs(cot_theta)
            for ct, st in ((ct0, st0), (-ct0, -st0)):
                if ct < 0.0 or st == 0.0:  # theta must stay in [-pi/2, pi/2]
                    continue
                t = z / st
                if t <= 0.0 or math.isinf(t):
                    continue
                candidates.append((cp, sp, ct, st, t))

    best = None
    best_res = math.inf
    for cp, sp, ct, st, t in candidates:
        if st == 0.0:
            fx, fy = t * cp, t * sp
        else:
            cot = ct / st
            fx = -cot * cp * em_neg
            fy = cot * sp * em_pos
        res = max(abs(fx - x), abs(fy - y))
        if res < best_res:
            best_res = res
            best = (cp, sp, ct, st, t)

    scale = 1.0 + max(abs(x), abs(y), abs(z))
    if best is None or best_res > PARAMS_RESIDUAL_TOL * scale:
        raise ValueError(
            f"no curve branch reaches {(x, y, z)}; best residual {best_res:.3e}"
        )
    cp, sp, ct, st, t = best
    phi = math.atan2(sp, cp)
    if phi == -math.pi:
        phi = math.pi
    return (phi, math.atan2(st, ct), t)


def params_from_endpoint(p: SolPoint) -> CurveParams:
    """The unique (phi, theta, t), t > 0, whose curve segment ends at p."""
    phi, theta, t = _invert(p.x, p.y, p.z)
    return CurveParams(Direction(phi, theta), t)


def translation_distance(p: SolPoint, q: SolPoint) -> float:
    """Arc length of the translation curve from p to q."""
    dx, dy, dz = q.x - p.x, q.y - p.y, q.z - p.z
    if max(abs(dx), abs(dy), abs(dz)) <= POINT_EQUALITY_TOL:
        return 0.0
    # image of q after translating p back to the origin
    _, _, t = _invert(dx * math.exp(p.z), dy * math.exp(-p.z), dz)
    return t


def sample_curve(p: CurveParams, n: int) -> list[SolPoint]:
    """n points along the segment at equal parameter steps from 0 to t."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    phi, theta = p.phi, p.theta
    step = p.t / (n - 1)
    points = [ORIGIN]
    for i in range(1, n - 1):
        points.append(SolPoint(*_forward(phi, theta, i * step)))
    points.append(SolPoint(*_forward(phi, theta, p.t)))
    return points
