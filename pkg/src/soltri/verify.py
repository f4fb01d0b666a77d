"""Independent oracles and property scans.

The closed-form curve is checked against fixed-step RK4 integration of
its defining ODE, and the closed-form inverse parametrization against a
grid-seeded Newton search on the forward map.  Randomized scans probe
the angle-sum floor, the planar case, tangent antipodality, and the
forward/inverse round trip; all scans are seeded per trial (seed + trial
index) so serial and parallel runs count identical outcomes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .core import ORIGIN, SolPoint
from .curves import CurveParams, Direction, HALF_PI, _forward, _invert, curve_point
from .triangles import Triangle, angle_sum, coplanarity_test, tangent_directions

__all__ = [
    "SweepSpec",
    "SweepRow",
    "ScanResult",
    "SuiteResult",
    "ode_oracle_curve",
    "ode_oracle_batch",
    "brute_force_params",
    "theorem_scan",
    "planar_scan",
    "antipodality_scan",
    "roundtrip_scan",
    "ode_scan",
    "table_sweep",
    "table_spec",
    "TABLE_VALUES",
]

DEFAULT_BOX = (-5.0, 5.0)

# value list shared by the two built-in sweeps
TABLE_VALUES = (-10.0, -2.0, -1.0, 0.01, 0.1, 0.5, 0.75, 1.5, 2.0, 5.0, 10.0)


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter family of triangles: a1, a2 fixed, one coordinate of a3 free."""

    a1: SolPoint
    a2: SolPoint
    template: tuple[float | None, float | None, float | None]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if sum(1 for c in self.template if c is None) != 1:
            raise ValueError(f"template must leave exactly one coordinate free, got {self.template}")
        if not self.values:
            raise ValueError("value list must be nonempty")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def third_vertex(self, value: float) -> SolPoint:
        coords = [value if c is None else c for c in self.template]
        return SolPoint(*coords)


@dataclass(frozen=True)
class SweepRow:
    value: float
    omega1: float
    omega2: float
    omega3: float
    angle_sum: float
    degenerate: bool = False

    def rounded(self, ndigits: int = 5) -> tuple[float, float, float, float, float]:
        """Display form; the stored fields keep full precision."""
        return tuple(round(v, ndigits) for v in
                     (self.value, self.omega1, self.omega2, self.omega3, self.angle_sum))


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a randomized angle-sum scan."""

    trials: int
    seed: int
    violations: int
    min_sum: float
    min_excess: float
    max_sum: float
    min_triangle: tuple[float, ...]  # the 9 coordinates attaining min_sum


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one property suite: worst deviation and violation count."""

    suite: str
    trials: int
    seed: int
    violations: int
    worst: float
    detail: str = ""


def table_spec(which: int) -> SweepSpec:
    """Built-in sweeps: vary the third vertex's z (1) or y (2) coordinate."""
    if which == 1:
        template = (0.5, 5.0, None)
    elif which == 2:
        template = (0.5, None, 0.5)
    else:
        raise ValueError(f"table index must be 1 or 2, got {which}")
    return SweepSpec(a1=ORIGIN, a2=SolPoint(-1.0, 1.0, 1.0), template=template, values=TABLE_VALUES)


def table_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row of interior angles per sweep value; degenerate rows are flagged."""
    rows = []
    for value in spec.values:
        a3 = spec.third_vertex(value)
        try:
            tri = Triangle(spec.a1, spec.a2, a3)
            s = angle_sum(tri)
        except ValueError:
            rows.append(SweepRow(value, math.nan, math.nan, math.nan, math.nan, degenerate=True))
            continue
        t = tangent_directions(tri)
        w1 = _acos_dot(t["t20"], t["t30"])
        w2 = _acos_dot(t["t12"], t["t32"])
        w3 = _acos_dot(t["t13"], t["t23"])
        rows.append(SweepRow(value, w1, w2, w3, s))
    return rows


def _acos_dot(u, v) -> float:
    d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    return math.acos(min(1.0, max(-1.0, d)))


def ode_oracle_curve(direction: Direction, t_end: float, steps: int) -> SolPoint:
    """Endpoint by fixed-step RK4 on xdot = u e^-z, ydot = v e^z, zdot = w.

    Deliberately ignorant of the closed-form solution; used only to check it.
    """
    if steps < 100:
        raise ValueError(f"need at least 100 integration steps, got {steps}")
    u, v, w = direction.unit_vector()
    h = t_end / steps
    exp = math.exp
    x = y = z = 0.0
    for _ in range(steps):
        k1x, k1y = u * exp(-z), v * exp(z)
        zm = z + 0.5 * h * w
        k2x, k2y = u * exp(-zm), v * exp(zm)
        # zdot is constant, so the two midpoint stages coincide in z
        k3x, k3y = k2x, k2y
        ze = z + h * w
        k4x, k4y = u * exp(-ze), v * exp(ze)
        x += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        y += h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        z = ze
    return SolPoint(x, y, z)


def ode_oracle_batch(directions: np.ndarray, t_end: np.ndarray, steps: int) -> np.ndarray:
    """Vectorized RK4 over rows of unit tangents; returns endpoints (n, 3)."""
    if steps < 100:
        raise ValueError(f"need at least 100 integration steps, got {steps}")
    u = directions[:, 0]
    v = directions[:, 1]
    w = directions[:, 2]
    h = np.asarray(t_end, dtype=float) / steps
    x = np.zeros_like(h)
    y = np.zeros_like(h)
    z = np.zeros_like(h)
    hw2 = 0.5 * h * w
    hw = h * w
    for _ in range(steps):
        zm = z + hw2
        ze = z + hw
        x += h * (u * np.exp(-z) + 4.0 * (u * np.exp(-zm)) + u * np.exp(-ze)) / 6.0
        y += h * (v * np.exp(z) + 4.0 * (v * np.exp(zm)) + v * np.exp(ze)) / 6.0
        z = ze
    return np.column_stack([x, y, z])


def brute_force_params(p: SolPoint, grid: int = 64) -> CurveParams:
    """Inverse parameters by grid search plus damped Newton on the forward map.

    Independent of the closed-form inversion: candidate (phi, theta) pairs
    are scored by forward residual on a grid x grid mesh (t recovered from
    z / sin theta, or the base-plane norm on the theta = 0 line), and the
    best seeds a finite-difference Newton iteration.  Non-convergence
    raises with the best residual found.
    """
    if p.x == 0.0 and p.y == 0.0 and p.z == 0.0:
        raise ValueError("translation-curve parameters are undefined at the origin")
    target = np.array(p.as_tuple())
    scale = 1.0 + float(np.max(np.abs(target)))

    phis = np.linspace(-math.pi, math.pi, grid + 1)[1:]
    thetas = np.linspace(-HALF_PI, HALF_PI, grid + 1)
    pg, tg = np.meshgrid(phis, thetas, indexing="ij")
    pg, tg = pg.ravel(), tg.ravel()
    st = np.sin(tg)
    line = st == 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        t = np.where(line, math.hypot(p.x, p.y), p.z / st)
        valid = (t > 0.0) & np.isfinite(t)
        cot = np.cos(tg) / st
        x = np.where(line, t * np.cos(pg), -cot * np.cos(pg) * np.expm1(-t * st))
        y = np.where(line, t * np.sin(pg), cot * np.sin(pg) * np.expm1(t * st))
        z = np.where(line, 0.0, t * st)
    res = np.max(np.abs(np.column_stack([x, y, z]) - target), axis=1)
    res[~valid] = np.inf

    order = np.argsort(res)
    best_res = math.inf
    best = None
    for idx in order[:5]:
        if not np.isfinite(res[idx]):
            break
        r, sol = _newton_polish(target, float(pg[idx]), float(tg[idx]), float(t[idx]))
        if r < best_res:
            best_res, best = r, sol
        if best_res <= 1e-12 * scale:
            break
    if best is None or best_res > 1e-9 * scale:
        raise RuntimeError(
            f"parameter search did not converge for {p.as_tuple()}; best residual {best_res:.3e}"
        )
    phi, theta, t_len = best
    if abs(theta) > HALF_PI - 1e-12:
        # at the poles phi is unidentifiable; use the canonical value
        phi, theta = 0.0, math.copysign(HALF_PI, theta)
    if phi == -math.pi:
        phi = math.pi
    return CurveParams(Direction(phi, theta), t_len)


def _newton_polish(target: np.ndarray, phi: float, theta: float, t: float):
    def residual(v):
        return np.array(_forward(v[0], v[1], v[2])) - target

    def clamp(v):
        v = v.copy()
        v[0] = math.remainder(v[0], 2.0 * math.pi)  # wraps into [-pi, pi]
        v[1] = min(HALF_PI, max(-HALF_PI, v[1]))
        v[2] = max(v[2], 1e-300)
        return v

    cur = np.array([phi, theta, t])
    f = residual(cur)
    norm = float(np.max(np.abs(f)))
    for _ in range(60):
        if norm <= 1e-13 * (1.0 + float(np.max(np.abs(target)))):
            break
        jac = np.empty((3, 3))
        for j in range(3):
            h = 1e-7 * max(1.0, abs(cur[j]))
            bumped = cur.copy()
            bumped[j] += h
            jac[:, j] = (residual(clamp(bumped)) - f) / h
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        improved = False
        alpha = 1.0
        for _ in range(25):
            cand = clamp(cur + alpha * step)
            fc = residual(cand)
            nc = float(np.max(np.abs(fc)))
            if nc < norm:
                cur, f, norm = cand, fc, nc
                improved = True
                break
            alpha *= 0.5
        if not improved:
            break
    return norm, (float(cur[0]), float(cur[1]), float(cur[2]))


def _random_triangle(rng: random.Random, box: tuple[float, float]) -> Triangle:
    lo, hi = box
    while True:
        pts = [tuple(rng.uniform(lo, hi) for _ in range(3)) for _ in range(3)]
        seps = [max(abs(a - b) for a, b in zip(p, q))
                for p, q in ((pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2]))]
        if min(seps) > 1e-6:
            return Triangle(SolPoint(*pts[0]), SolPoint(*pts[1]), SolPoint(*pts[2]))


def theorem_scan(trials: int, seed: int, box: tuple[float, float] = DEFAULT_BOX,
                 tol: float = 1e-9) -> ScanResult:
    """Randomized check of the angle-sum floor: counts sums below pi - tol."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    violations = 0
    min_sum = math.inf
    max_sum = -math.inf
    min_tri: tuple[float, ...] = ()
    floor = math.pi - tol
    for i in range(trials):
        tri = _random_triangle(random.Random(seed + i), box)
        s = angle_sum(tri)
        if s < min_sum:
            min_sum = s
            min_tri = tuple(c for v in tri.vertices() for c in v)
        max_sum = max(max_sum, s)
        if s < floor:
            violations += 1
    return ScanResult(
        trials=trials,
        seed=seed,
        violations=violations,
        min_sum=min_sum,
        min_excess=min_sum - math.pi,
        max_sum=max_sum,
        min_triangle=min_tri,
    )


def planar_scan(trials: int, seed: int, box: tuple[float, float] = DEFAULT_BOX,
                tol: float = 1e-9) -> SuiteResult:
    """Triangles in coordinate planes and their parallels: sum must equal pi."""
    lo, hi = box
    violations = 0
    worst = 0.0
    detail = ""
    for i in range(trials):
        rng = random.Random(seed + i)
        axis = rng.randrange(3)
        shared = rng.uniform(lo, hi)
        while True:
            pts = []
            for _ in range(3):
                c = [rng.uniform(lo, hi) for _ in range(3)]
                c[axis] = shared
                pts.append(tuple(c))
            seps = [max(abs(a - b) for a, b in zip(p, q))
                    for p, q in ((pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2]))]
            if min(seps) > 1e-6:
                break
        tri = Triangle(SolPoint(*pts[0]), SolPoint(*pts[1]), SolPoint(*pts[2]))
        dev = abs(angle_sum(tri) - math.pi)
        coplanar, _ = coplanarity_test(tri)
        worst = max(worst, dev)
        if dev >= tol or not coplanar:
            violations += 1
            if not detail:
                detail = repr(tuple(c for v in tri.vertices() for c in v))
    return SuiteResult("planar", trials, seed, violations, worst, detail)


def antipodality_scan(trials: int, seed: int, box: tuple[float, float] = DEFAULT_BOX,
                      tol: float = 1e-9) -> SuiteResult:
    """Checks that outgoing and returning side tangents are exact opposites."""
    violations = 0
    worst = 0.0
    detail = ""
    pairs = (("t20", "t12"), ("t30", "t13"), ("t32", "t23"))
    for i in range(trials):
        tri = _random_triangle(random.Random(seed + i), box)
        t = tangent_directions(tri)
        dev = max(abs(a + b) for ka, kb in pairs for a, b in zip(t[ka], t[kb]))
        worst = max(worst, dev)
        if dev >= tol:
            violations += 1
            if not detail:
                detail = repr(tuple(c for v in tri.vertices() for c in v))
    return SuiteResult("antipodality", trials, seed, violations, worst, detail)


def roundtrip_scan(trials: int, seed: int, tol: float = 1e-9,
                   t_max: float = 10.0) -> SuiteResult:
    """Forward-then-invert over all four inversion branches."""
    violations = 0
    worst = 0.0
    detail = ""
    for i in range(trials):
        rng = random.Random(seed + i)
        branch = i % 4
        t_len = rng.uniform(1e-6, t_max)
        if branch == 0:
            phi = rng.uniform(-math.pi, math.pi)
            theta = rng.uniform(-HALF_PI, HALF_PI)
        elif branch == 1:
            phi = rng.choice((0.0, math.pi))
            theta = rng.uniform(-HALF_PI, HALF_PI)
        elif branch == 2:
            phi = rng.uniform(-math.pi, math.pi)
            theta = 0.0
        else:
            phi = 0.0
            theta = rng.choice((-HALF_PI, HALF_PI))
        if branch in (0, 1) and (theta == 0.0 or abs(theta) == HALF_PI):
            theta = 0.5  # avoid crossing into another branch
        x, y, z = _forward(phi, theta, t_len)
        rp, rt, rl = _invert(x, y, z)
        dphi = abs(math.remainder(rp - phi, 2.0 * math.pi))
        dev = max(dphi, abs(rt - theta), abs(rl - t_len))
        worst = max(worst, dev)
        if dev >= tol:
            violations += 1
            if not detail:
                detail = repr((phi, theta, t_len))
    return SuiteResult("roundtrip", trials, seed, violations, worst, detail)


def ode_scan(trials: int, seed: int, steps: int = 10_000, t_max: float = 5.0,
             tol: float = 1e-8) -> SuiteResult:
    """Closed-form endpoints against batched RK4 integration."""
    dirs = np.empty((trials, 3))
    t_end = np.empty(trials)
    params = []
    for i in range(trials):
        rng = random.Random(seed + i)
        d = Direction(rng.uniform(-math.pi, math.pi), rng.uniform(-HALF_PI, HALF_PI))
        t = rng.uniform(0.1, t_max)
        dirs[i] = d.unit_vector()
        t_end[i] = t
        params.append(CurveParams(d, t))
    integrated = ode_oracle_batch(dirs, t_end, steps)
    closed = np.array([curve_point(p).as_tuple() for p in params])
    devs = np.max(np.abs(integrated - closed), axis=1)
    worst = float(devs.max())
    violations = int(np.count_nonzero(devs >= tol))
    detail = ""
    if violations:
        j = int(np.argmax(devs))
        detail = repr((params[j].phi, params[j].theta, params[j].t))
    return SuiteResult("ode", trials, seed, violations, worst, detail)
