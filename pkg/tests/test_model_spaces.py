"""Hyperboloid model arithmetic, geodesics, sampling, line configurations."""

import math

import numpy as np
import pytest

from harmonic_embed.model_spaces import (
    Geodesic,
    LineConfig,
    SeededSampler,
    basepoint,
    distance,
    evenly_spaced_line,
    foot_distance_profile,
    geodesic_point,
    minkowski_form,
    on_sheet_defect,
    pairwise_distances,
    points_to_csv,
    random_points,
    random_unit_tangent,
    tangent_frame,
)


def canonical_geodesic(n=3):
    base = basepoint(n)
    tangent = np.zeros(n + 1)
    tangent[1] = 1.0
    return Geodesic(base, tangent)


def test_minkowski_form_examples():
    e = basepoint(3)
    assert minkowski_form(e, e) == -1.0
    t = 0.8
    moving = np.array([math.cosh(t), math.sinh(t)])
    assert minkowski_form(np.array([1.0, 0.0]), moving) == pytest.approx(-math.cosh(t), rel=1e-15)
    v = np.array([0.0, 1.0, 0.0, 0.0])
    assert minkowski_form(v, v) == 1.0
    with pytest.raises(ValueError):
        minkowski_form(np.ones(3), np.ones(4))


def test_distance_identity_and_unit_speed():
    g = canonical_geodesic()
    assert distance(g.base, g.base) == 0.0
    for p in random_points(SeededSampler(44), 3, 10, 3.0):
        assert distance(p, p) == 0.0  # identity of indiscernibles, exactly
        assert distance(p, basepoint(3)) == distance(basepoint(3), p)
    for t in [-10.0, -3.2, -1.0, 0.5, 2.0, 10.0]:
        assert distance(g.base, geodesic_point(g, t)) == pytest.approx(abs(t), abs=1e-10)
    for s, t in [(-10.0, 10.0), (-1.0, 1.0), (0.3, 7.7)]:
        assert distance(geodesic_point(g, s), geodesic_point(g, t)) == pytest.approx(
            abs(s - t), abs=1e-10
        )


def test_geodesic_point_examples():
    g = canonical_geodesic()
    assert np.array_equal(geodesic_point(g, 0.0), g.base)
    assert distance(geodesic_point(g, -1.0), geodesic_point(g, 1.0)) == pytest.approx(2.0, abs=1e-12)
    for t in [-4.0, -0.5, 1.0, 4.0]:
        assert on_sheet_defect(geodesic_point(g, t)) <= 1e-12


def test_geodesic_validation():
    base = basepoint(2)
    with pytest.raises(ValueError):
        Geodesic(base, np.array([0.0, 2.0, 0.0]))  # not unit
    with pytest.raises(ValueError):
        Geodesic(base, np.array([1.0, 1.0, 0.0]))  # not orthogonal to base
    with pytest.raises(ValueError):
        Geodesic(np.array([2.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))  # base off sheet


def test_triangle_inequality_on_random_triples():
    sampler = SeededSampler(7)
    pts = random_points(sampler, 3, 300, 3.0)
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(100):
        i, j, k = rng.choice(300, size=3, replace=False)
        assert distance(pts[i], pts[k]) <= distance(pts[i], pts[j]) + distance(pts[j], pts[k]) + 1e-10


def test_random_points_on_sheet_and_in_radius():
    pts = random_points(SeededSampler(42), 3, 50, 3.0)
    e = basepoint(3)
    for p in pts:
        assert on_sheet_defect(p) <= 1e-12
        assert p[0] >= 1.0
        assert distance(e, p) <= 3.0 + 1e-12


def test_random_points_degenerate_radius_hits_basepoint():
    p = random_points(SeededSampler(5), 4, 1, 1e-9)[0]
    assert np.max(np.abs(p - basepoint(4))) <= 1e-9


def test_random_points_deterministic_per_seed():
    a = random_points(SeededSampler(123), 3, 20, 2.5)
    b = random_points(SeededSampler(123), 3, 20, 2.5)
    assert np.array_equal(a, b)
    c = random_points(SeededSampler(124), 3, 20, 2.5)
    assert not np.array_equal(a, c)


def test_sampler_clone_restarts_stream():
    s = SeededSampler(9)
    first = random_points(s, 2, 5, 1.0)
    again = random_points(s.clone(), 2, 5, 1.0)
    assert np.array_equal(first, again)


def test_random_points_validation():
    with pytest.raises(ValueError):
        random_points(SeededSampler(1), 3, 0, 1.0)
    with pytest.raises(ValueError):
        random_points(SeededSampler(1), 3, 1, 0.0)


def test_pairwise_distances_symmetric_zero_diagonal():
    pts = random_points(SeededSampler(3), 3, 12, 3.0)
    d = pairwise_distances(pts)
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0.0)
    assert d[2, 5] == pytest.approx(distance(pts[2], pts[5]), abs=1e-12)


def test_foot_distance_profile_on_geodesic():
    g = canonical_geodesic()
    rho, t0 = foot_distance_profile(g, geodesic_point(g, 2.0))
    assert rho == pytest.approx(0.0, abs=1e-7)
    assert t0 == pytest.approx(2.0, abs=1e-9)


def test_foot_distance_profile_orthogonal_construction():
    g = canonical_geodesic()
    w = np.zeros(4)
    w[2] = 1.0  # unit, Q-orthogonal to base and tangent
    q = math.cosh(1.0) * g.base + math.sinh(1.0) * w
    rho, t0 = foot_distance_profile(g, q)
    assert rho == pytest.approx(1.0, abs=1e-12)
    assert t0 == pytest.approx(0.0, abs=1e-12)


def test_foot_distance_profile_random_points():
    sampler = SeededSampler(21)
    g = canonical_geodesic()
    pts = random_points(sampler, 3, 50, 3.0)
    for q in pts:
        # raises ProfileFitError if any sample residual exceeds 1e-9
        rho, t0 = foot_distance_profile(g, q)
        assert rho >= 0.0
        assert math.cosh(distance(geodesic_point(g, 0.37), q)) == pytest.approx(
            math.cosh(rho) * math.cosh(0.37 - t0), abs=1e-9
        )


def test_tangent_frame_orthonormal():
    p = random_points(SeededSampler(2), 4, 1, 2.0)[0]
    frame = tangent_frame(p)
    assert frame.shape == (4, 5)
    for i, u in enumerate(frame):
        assert minkowski_form(u, p) == pytest.approx(0.0, abs=1e-12)
        for j, v in enumerate(frame):
            want = 1.0 if i == j else 0.0
            assert minkowski_form(u, v) == pytest.approx(want, abs=1e-11)


def test_random_unit_tangent():
    sampler = SeededSampler(17)
    p = random_points(sampler, 3, 1, 1.0)[0]
    v = random_unit_tangent(sampler, p)
    assert minkowski_form(v, v) == pytest.approx(1.0, abs=1e-12)
    assert minkowski_form(v, p) == pytest.approx(0.0, abs=1e-12)


def test_line_config():
    line = evenly_spaced_line(5, -2.0, 2.0)
    d = line.distance_matrix()
    assert np.array_equal(d, d.T)
    assert d[0, 4] == 4.0
    assert np.all(np.diag(d) == 0.0)
    with pytest.raises(ValueError):
        LineConfig((0.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        LineConfig((1.0, 0.0))


def test_points_to_csv_roundtrip():
    pts = random_points(SeededSampler(31), 2, 4, 1.5)
    text = points_to_csv(pts)
    lines = text.strip().split("\n")
    assert lines[0] == "x0,x1,x2"
    parsed = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert np.array_equal(parsed, pts)
