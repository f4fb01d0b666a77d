"""Curve evaluation, inverse parametrization, and translation distance."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from soltri import (
    ORIGIN,
    CurveParams,
    Direction,
    MetricTensor,
    SolPoint,
    apply,
    curve_point,
    curve_tangent,
    endpoint_branch,
    params_from_endpoint,
    sample_curve,
    translation_distance,
    translation_to,
)

HALF_PI = math.pi / 2.0

phis = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)
thetas_open = st.floats(min_value=-HALF_PI, max_value=HALF_PI,
                        exclude_min=True, exclude_max=True, allow_nan=False)
lengths = st.floats(min_value=1e-9, max_value=10.0, allow_nan=False)


def angle_diff(a, b):
    return abs(math.remainder(a - b, 2.0 * math.pi))


# --- Direction / CurveParams -------------------------------------------------

def test_direction_range_validation():
    with pytest.raises(ValueError):
        Direction(4.0, 0.0)
    with pytest.raises(ValueError):
        Direction(0.0, 2.0)
    with pytest.raises(ValueError):
        Direction(math.nan, 0.0)
    Direction(math.pi, HALF_PI)  # boundary values are fine


@settings(max_examples=150, deadline=None)
@given(phis, st.floats(min_value=-HALF_PI, max_value=HALF_PI, allow_nan=False))
def test_direction_unit_vector_has_norm_one(phi, theta):
    u, v, w = Direction(phi, theta).unit_vector()
    assert math.sqrt(u * u + v * v + w * w) == pytest.approx(1.0, abs=1e-15)


def test_direction_pole_vectors_are_exact():
    assert Direction(0.7, HALF_PI).unit_vector() == (0.0, 0.0, 1.0)
    assert Direction(-2.0, -HALF_PI).unit_vector() == (0.0, 0.0, -1.0)


def test_direction_from_vector_round_trips():
    d = Direction.from_vector(1.0, 1.0, 0.0)
    assert d.phi == pytest.approx(math.pi / 4, abs=1e-15)
    assert d.theta == 0.0
    d = Direction.from_vector(0.0, 0.0, -3.0)
    assert (d.phi, d.theta) == (0.0, -HALF_PI)
    with pytest.raises(ValueError):
        Direction.from_vector(0.0, 0.0, 0.0)


def test_curve_params_validation():
    with pytest.raises(ValueError):
        CurveParams(Direction(0.0, 0.0), -1.0)
    p = CurveParams.from_angles(0.5, 0.25, 2.0)
    assert (p.phi, p.theta, p.t) == (0.5, 0.25, 2.0)


# --- forward evaluation ------------------------------------------------------

def test_curve_point_at_zero_is_origin():
    for phi, theta in [(0.0, 0.0), (1.0, 0.5), (0.3, HALF_PI)]:
        assert curve_point(CurveParams.from_angles(phi, theta, 0.0)) == ORIGIN


def test_curve_point_base_plane_line():
    got = curve_point(CurveParams.from_angles(math.pi / 4, 0.0, math.sqrt(2.0)))
    assert got.x == pytest.approx(1.0, abs=1e-15)
    assert got.y == pytest.approx(1.0, abs=1e-15)
    assert got.z == 0.0


def test_curve_point_hand_value():
    # phi=0, theta=pi/4, t=1: x = 1 - e^{-sqrt2/2}, y = 0, z = sqrt2/2
    got = curve_point(CurveParams.from_angles(0.0, math.pi / 4, 1.0))
    s = math.sqrt(2.0) / 2.0
    assert got.x == pytest.approx(-math.expm1(-s), rel=1e-14)
    assert got.x == pytest.approx(0.506931, abs=1e-6)
    assert got.y == 0.0
    assert got.z == pytest.approx(s, rel=1e-15)


def test_curve_point_poles_are_exact():
    assert curve_point(CurveParams.from_angles(0.0, HALF_PI, 2.5)) == SolPoint(0, 0, 2.5)
    assert curve_point(CurveParams.from_angles(1.2, -HALF_PI, 4.0)) == SolPoint(0, 0, -4.0)


def test_curve_tangent_at_zero_is_direction():
    d = Direction(0.8, -0.4)
    assert curve_tangent(CurveParams(d, 0.0)) == d.unit_vector()


def test_curve_tangent_pole():
    assert curve_tangent(CurveParams.from_angles(0.3, HALF_PI, 7.0)) == (0.0, 0.0, 1.0)


def test_curve_tangent_hand_value():
    got = curve_tangent(CurveParams.from_angles(0.0, math.pi / 4, 1.0))
    s = math.sqrt(2.0) / 2.0
    assert got[0] == pytest.approx(s * math.exp(-s), rel=1e-14)
    assert got[0] == pytest.approx(0.348652, abs=1e-6)
    assert got[1] == 0.0
    assert got[2] == pytest.approx(s, rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(phis, st.floats(min_value=-HALF_PI, max_value=HALF_PI, allow_nan=False), lengths)
def test_unit_speed(phi, theta, t):
    params = CurveParams.from_angles(phi, theta, t)
    g = MetricTensor.at(curve_point(params))
    assert g.norm(curve_tangent(params)) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(phis, thetas_open, lengths)
def test_z_coordinate_is_t_sin_theta(phi, theta, t):
    p = curve_point(CurveParams.from_angles(phi, theta, t))
    assert p.z == t * math.sin(theta)


# --- inverse parametrization -------------------------------------------------

def test_params_base_plane():
    got = params_from_endpoint(SolPoint(1, 1, 0))
    assert got.phi == pytest.approx(math.pi / 4, abs=1e-15)
    assert got.theta == 0.0
    assert got.t == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_params_axis():
    got = params_from_endpoint(SolPoint(0, 0, -3))
    assert got.phi == 0.0
    assert got.theta == -HALF_PI
    assert got.t == 3.0
    up = params_from_endpoint(SolPoint(0, 0, 0.25))
    assert (up.phi, up.theta, up.t) == (0.0, HALF_PI, 0.25)


def test_params_generic_frozen_value():
    # independently confirmed by the grid+Newton search oracle
    got = params_from_endpoint(SolPoint(-1, 1, 1))
    assert got.phi == pytest.approx(2.7890792318121744, abs=1e-12)
    assert got.theta == pytest.approx(0.5354415838644542, abs=1e-12)
    assert got.t == pytest.approx(1.9599355061877888, abs=1e-12)
    back = curve_point(got)
    assert max(abs(back.x + 1), abs(back.y - 1), abs(back.z - 1)) < 1e-10


def test_params_x_zero_subcase():
    # arccot(0) ambiguity: phi must come out as +pi/2 or -pi/2 to match y
    plus = params_from_endpoint(SolPoint(0, 3, 1))
    assert plus.phi == pytest.approx(HALF_PI, abs=1e-15)
    minus = params_from_endpoint(SolPoint(0, -3, 1))
    assert minus.phi == pytest.approx(-HALF_PI, abs=1e-15)


def test_params_y_zero_branch():
    for x, z in [(2.0, -1.0), (-2.0, -1.0), (0.5, 2.0), (-0.5, 2.0)]:
        p = SolPoint(x, 0.0, z)
        assert endpoint_branch(p) == "y0"
        got = params_from_endpoint(p)
        assert got.phi in (0.0, math.pi)
        back = curve_point(got)
        assert max(abs(back.x - x), abs(back.y), abs(back.z - z)) < 1e-12


def test_params_rejects_origin():
    with pytest.raises(ValueError):
        params_from_endpoint(ORIGIN)


def test_endpoint_branch_classification():
    assert endpoint_branch(SolPoint(1, 2, 0)) == "z0"
    assert endpoint_branch(SolPoint(0, 0, 3)) == "axis"
    assert endpoint_branch(SolPoint(1, 0, 3)) == "y0"
    assert endpoint_branch(SolPoint(1, 2, 3)) == "generic"


@settings(max_examples=300, deadline=None)
@given(phis, thetas_open, lengths)
def test_roundtrip_generic(phi, theta, t):
    point = curve_point(CurveParams.from_angles(phi, theta, t))
    got = params_from_endpoint(point)
    assert angle_diff(got.phi, phi) < 1e-9
    assert abs(got.theta - theta) < 1e-9
    assert abs(got.t - t) < 1e-9


def test_roundtrip_special_branches():
    rng = random.Random(3)
    for _ in range(200):
        case = rng.randrange(3)
        t = rng.uniform(1e-6, 10.0)
        if case == 0:  # base plane
            phi, theta = rng.uniform(-math.pi, math.pi), 0.0
        elif case == 1:  # y = 0 plane
            phi, theta = rng.choice((0.0, math.pi)), rng.uniform(-1.5, 1.5) or 0.3
        else:  # axis
            phi, theta = 0.0, rng.choice((-HALF_PI, HALF_PI))
        point = curve_point(CurveParams.from_angles(phi, theta, t))
        got = params_from_endpoint(point)
        assert angle_diff(got.phi, phi) < 1e-9
        assert abs(got.theta - theta) < 1e-9
        assert abs(got.t - t) < 1e-9


# --- translation distance ----------------------------------------------------

def test_distance_to_self_is_zero():
    p = SolPoint(0.3, -0.8, 1.7)
    assert translation_distance(p, p) == 0.0
    nudged = SolPoint(0.3 + 1e-13, -0.8, 1.7)
    assert translation_distance(p, nudged) == 0.0


def test_distance_vertical():
    for c in (-3.0, -0.5, 0.25, 4.0):
        assert translation_distance(ORIGIN, SolPoint(0, 0, c)) == abs(c)


def test_distance_base_plane_euclidean():
    rng = random.Random(11)
    for _ in range(50):
        x, y = rng.uniform(-5, 5), rng.uniform(-5, 5)
        if x == 0.0 and y == 0.0:
            continue
        assert translation_distance(ORIGIN, SolPoint(x, y, 0)) == math.hypot(x, y)


def test_distance_symmetry():
    rng = random.Random(23)
    for _ in range(300):
        p = SolPoint(*(rng.uniform(-4, 4) for _ in range(3)))
        q = SolPoint(*(rng.uniform(-4, 4) for _ in range(3)))
        assert translation_distance(p, q) == pytest.approx(translation_distance(q, p), abs=1e-9)


def test_distance_matches_matrix_route():
    rng = random.Random(31)
    for _ in range(50):
        p = SolPoint(*(rng.uniform(-3, 3) for _ in range(3)))
        q = SolPoint(*(rng.uniform(-3, 3) for _ in range(3)))
        image = apply(translation_to(p).inverse(), q)
        direct = translation_distance(p, q)
        assert direct == pytest.approx(params_from_endpoint(image).t, abs=1e-12)


# --- sampling ----------------------------------------------------------------

def test_sample_curve_endpoints():
    params = CurveParams.from_angles(0.4, 0.9, 3.0)
    pts = sample_curve(params, 2)
    assert pts[0] == ORIGIN
    assert pts[1] == curve_point(params)


def test_sample_curve_counts_and_base_plane():
    params = CurveParams.from_angles(1.0, 0.0, 5.0)
    pts = sample_curve(params, 17)
    assert len(pts) == 17
    assert all(p.z == 0.0 for p in pts)


def test_sample_curve_rejects_small_n():
    with pytest.raises(ValueError):
        sample_curve(CurveParams.from_angles(0.0, 0.0, 1.0), 1)


def test_sample_curve_coordinate_plane_side():
    # the side toward (0, 1, 1) stays in the x = 0 plane
    params = params_from_endpoint(SolPoint(0, 1, 1))
    for p in sample_curve(params, 25):
        assert abs(p.x) < 1e-12
