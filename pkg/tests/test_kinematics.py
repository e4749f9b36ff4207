import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcspine.errors import DomainError
from vcspine.kinematics import (ActuationModel, GroupPressures, backbone, bend_angle_table,
                                effective_moment, forward_kinematics, max_magnitude,
                                planar_shape, pressure_vector, pressures_for)

kpa = st.floats(0, 300e3)


def test_single_arc_quarter_circle():
    L = 0.40
    r, z, a = planar_shape([(L, (math.pi / 2) / L)])
    assert a == pytest.approx(math.pi / 2)
    assert r == pytest.approx(L / (math.pi / 2), rel=1e-12)
    assert z == pytest.approx(L / (math.pi / 2), rel=1e-12)
    assert r == pytest.approx(0.2546, abs=1e-4)


def test_straight_and_continuity():
    assert planar_shape([(0.4, 0.0)]) == (0.0, pytest.approx(0.4), 0.0)
    r, z, a = planar_shape([(0.4, 1e-9)])
    assert r == pytest.approx(0.5 * 1e-9 * 0.16, rel=1e-6)
    assert z == pytest.approx(0.4)


def test_split_segment_matches_single_arc():
    k = 2.3
    one = planar_shape([(0.4, k)])
    two = planar_shape([(0.15, k), (0.25, k)])
    assert np.allclose(one, two, atol=1e-14)


def test_arc_length_preserved():
    *_, pts = planar_shape([(0.2, 4.0), (0.2, 1.5)], points_per_segment=2000)
    assert np.sum(np.hypot(*np.diff(pts, axis=0).T)) == pytest.approx(0.4, rel=1e-5)


def test_effective_moment():
    model = ActuationModel(2e-5)
    M, phi = effective_moment(GroupPressures(250e3, 0, 0), model)
    assert M == pytest.approx(2e-5 * 250e3) and phi == 0.0
    M, phi = effective_moment(GroupPressures(0, 100e3, 0), model)
    assert phi == pytest.approx(2 * math.pi / 3)
    M, _ = effective_moment(GroupPressures(80e3, 80e3, 80e3), model)
    assert M == 0.0


@settings(max_examples=60)
@given(p1=kpa, p2=kpa, p3=kpa)
def test_rotation_equivariance(robot, p1, p2, p3):
    a = robot.config(0.1, GroupPressures(p1, p2, p3))
    b = robot.config(0.1, GroupPressures(p3, p1, p2))  # groups shifted by one
    assert b.moment == pytest.approx(a.moment, rel=1e-9, abs=1e-12)
    assert b.bend_angle == pytest.approx(a.bend_angle, rel=1e-9, abs=1e-12)
    if a.moment > 1e-6:
        d = math.remainder(b.bend_plane - a.bend_plane - 2 * math.pi / 3, 2 * math.pi)
        assert abs(d) < 1e-7


@settings(max_examples=60)
@given(mag=st.floats(0, 150e3), phi=st.floats(-math.pi, math.pi))
def test_pressures_for_inverse(mag, phi):
    p = pressures_for(mag, phi)
    v = pressure_vector(p)
    assert np.allclose(v, [mag * math.cos(phi), mag * math.sin(phi)], atol=1e-6)
    assert min(p) == 0.0


@given(phi=st.floats(-math.pi, math.pi))
def test_max_magnitude_is_reachable(phi):
    m = max_magnitude(phi, 250e3)
    p = pressures_for(m, phi, limit=250e3)
    assert max(p) == pytest.approx(250e3)
    with pytest.raises(DomainError):
        pressures_for(m * 1.01, phi, limit=250e3)


@settings(max_examples=40)
@given(L=st.floats(0, 0.30), P=st.floats(0, 300e3))
def test_tip_within_body_sphere(robot, L, P):
    tip = forward_kinematics(robot.config(L, (P, 0, 0)))
    assert np.linalg.norm(tip.position) <= robot.geom.body_length + 1e-12
    assert np.linalg.norm(tip.tangent) == pytest.approx(1.0)


def test_angle_linear_in_pressure(robot):
    a = robot.config(0.2, (100e3, 0, 0)).bend_angle
    b = robot.config(0.2, (200e3, 0, 0)).bend_angle
    assert b == pytest.approx(2 * a, rel=1e-12)


def test_table_monotone(robot):
    t = bend_angle_table(robot.geom, robot.mat, robot.curve, robot.model,
                         [L / 100 for L in range(0, 31, 5)],
                         [P * 1e3 for P in range(50, 251, 50)])
    assert t.shape == (7, 5)
    assert np.all(np.diff(t, axis=1) > 0)
    assert np.all(np.diff(t, axis=0) <= 1e-12)


def test_backbone_ends_at_tip(robot):
    cfg = robot.config(0.15, (100e3, 50e3, 0))
    pts = backbone(cfg)
    assert np.allclose(pts[0], 0)
    assert np.allclose(pts[-1], forward_kinematics(cfg).position, atol=1e-12)


def test_pressure_validation():
    with pytest.raises(DomainError):
        GroupPressures(-1.0)
    with pytest.raises(DomainError):
        GroupPressures(301e3)
    with pytest.raises(DomainError):
        ActuationModel(0.0)
