import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vcspine.errors import DomainError, ValidationError
from vcspine.stiffness import (MEASURED_LENGTHS, MEASURED_MODULI, StiffnessCurve,
                               StiffnessSample, body_rigidity, default_curve, modulus_at,
                               rigidity_profile, spine_rigidity)


def test_default_curve_fixtures(curve):
    assert [s.length for s in curve.samples] == [0.05, 0.10, 0.15, 0.20, 0.25, 0.30]
    assert [s.modulus for s in curve.samples] == [0.318e6, 1.323e6, 2.032e6, 3.069e6,
                                                  3.763e6, 4.389e6]


def test_interpolation(curve):
    assert modulus_at(curve, 0.075) == pytest.approx((0.318e6 + 1.323e6) / 2)
    assert modulus_at(curve, 0.025) == pytest.approx(0.159e6)
    for L, E in zip(MEASURED_LENGTHS, MEASURED_MODULI):
        assert modulus_at(curve, L) == pytest.approx(E)


def test_flat_beyond_last_sample():
    c = StiffnessCurve(default_curve().samples[:3], max_length=0.30)
    assert modulus_at(c, 0.25) == pytest.approx(2.032e6)


@given(a=st.floats(1e-4, 0.30), b=st.floats(1e-4, 0.30))
def test_monotone(curve, a, b):
    lo, hi = min(a, b), max(a, b)
    assert modulus_at(curve, lo) <= modulus_at(curve, hi)


def test_domain(curve):
    for L in (0.0, -0.01, 0.31):
        with pytest.raises(DomainError):
            modulus_at(curve, L)


def test_curve_validation():
    s = [StiffnessSample(0.1, 2e6), StiffnessSample(0.2, 1e6)]
    with pytest.raises(ValidationError):
        StiffnessCurve(tuple(s))
    with pytest.raises(ValidationError):
        StiffnessCurve((StiffnessSample(0.1, 1e6),))
    with pytest.raises(ValidationError):
        StiffnessCurve((StiffnessSample(0.2, 1e6), StiffnessSample(0.1, 2e6)))
    with pytest.raises(ValidationError):
        StiffnessSample(0.1, 0.0)


def test_rigidities(geom, mat, curve):
    # 255 kPa * pi (0.05^4 - 0.029^4) / 4
    assert body_rigidity(geom, mat) == pytest.approx(255e3 * math.pi * (6.25e-6 - 7.07281e-7) / 4,
                                                     rel=1e-6)
    assert body_rigidity(geom, mat) == pytest.approx(1.1101, abs=1e-4)
    assert spine_rigidity(geom, curve, 0.30) == pytest.approx(4.389e6 * 5.554969e-7, rel=1e-6)
    assert spine_rigidity(geom, curve, 0.0) == 0.0


def test_profile_segments(geom, mat, curve):
    prof = rigidity_profile(geom, mat, curve, 0.20, rigidity_scale=2.0)
    assert len(prof) == 2
    jam, free = prof.segments
    assert (jam.start, jam.end, free.start, free.end) == (0.0, 0.20, 0.20, 0.40)
    ei_b = 2.0 * body_rigidity(geom, mat)
    assert free.rigidity == pytest.approx(ei_b)
    assert jam.rigidity == pytest.approx(ei_b + 3.069e6 * geom.spine_second_moment)
    assert prof.compliance == pytest.approx(0.2 / jam.rigidity + 0.2 / free.rigidity)

    bare = rigidity_profile(geom, mat, curve, 0.0)
    assert len(bare) == 1 and bare.segments[0].length == pytest.approx(0.40)


@given(a=st.floats(0, 0.30), b=st.floats(0, 0.30))
def test_compliance_nonincreasing_in_spine_length(geom, mat, curve, a, b):
    lo, hi = min(a, b), max(a, b)
    c_lo = rigidity_profile(geom, mat, curve, lo).compliance
    c_hi = rigidity_profile(geom, mat, curve, hi).compliance
    assert c_hi <= c_lo * (1 + 1e-12)


def test_profile_domain(geom, mat, curve):
    with pytest.raises(DomainError):
        rigidity_profile(geom, mat, curve, 0.35)
    with pytest.raises(DomainError):
        rigidity_profile(geom, mat, curve, 0.1, rigidity_scale=0)
