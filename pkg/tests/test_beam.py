import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcspine.beam import (BeamSpec, deflection_at, deflection_oracle, modulus_from_tip,
                          second_moment_circle, tip_deflection)
from vcspine.errors import DomainError

moduli = st.floats(1e4, 1e10)
lengths = st.floats(0.01, 2.0)
radii = st.floats(0.001, 0.1)
loads = st.floats(0.01, 100.0)


def test_second_moment_of_spine_section():
    # pi r^4 / 4 for r = 2.9 cm, worked by hand: 0.029^4 = 7.07281e-7
    assert second_moment_circle(0.029) == pytest.approx(5.554969e-7, rel=1e-6)


def test_tip_deflection_jammed_30cm():
    spec = BeamSpec.circular(0.30, 4.389e6, 0.029)
    y = tip_deflection(spec, 5.0)
    assert y == pytest.approx(5.0 * 0.027 / (3 * 4.389e6 * math.pi * 0.029 ** 4 / 4), rel=1e-12)
    assert y == pytest.approx(0.018457, abs=2e-6)


def test_deflection_at_tip_equals_tip_deflection():
    spec = BeamSpec.circular(0.2, 3.069e6, 0.029)
    assert deflection_at(spec, 2.0, 0.2) == pytest.approx(tip_deflection(spec, 2.0), rel=1e-14)
    assert deflection_at(spec, 2.0, 0.0) == 0.0


def test_zero_load_gives_zero_everywhere():
    spec = BeamSpec.circular(0.2, 1e6, 0.01)
    for x in np.linspace(0, 0.2, 7):
        assert deflection_at(spec, 0.0, x) == 0.0


@settings(max_examples=30, deadline=None)
@given(E=moduli, L=lengths, r=radii, F=loads, frac=st.floats(0.05, 1.0))
def test_oracle_matches_closed_form(E, L, r, F, frac):
    spec = BeamSpec.circular(L, E, r)
    x = frac * L
    assert deflection_oracle(spec, F, x) == pytest.approx(deflection_at(spec, F, x), rel=1e-8)


@settings(max_examples=100)
@given(E=moduli, L=lengths, r=radii, F=loads)
def test_modulus_inverse(E, L, r, F):
    y = tip_deflection(BeamSpec.circular(L, E, r), F)
    assert modulus_from_tip(F, L, r, y) == pytest.approx(E, rel=1e-9)


@settings(max_examples=50)
@given(E=moduli, L=lengths, r=radii, F=loads, k=st.floats(0.1, 10.0))
def test_linear_in_load(E, L, r, F, k):
    spec = BeamSpec.circular(L, E, r)
    assert tip_deflection(spec, k * F) == pytest.approx(k * tip_deflection(spec, F), rel=1e-12)


@settings(max_examples=50)
@given(E=moduli, L=lengths, r=radii, F=loads)
def test_scaling_laws(E, L, r, F):
    base = tip_deflection(BeamSpec.circular(L, E, r), F)
    assert tip_deflection(BeamSpec.circular(2 * L, E, r), F) == pytest.approx(8 * base, rel=1e-12)
    assert tip_deflection(BeamSpec.circular(L, E, 2 * r), F) == pytest.approx(base / 16, rel=1e-12)


@settings(max_examples=50)
@given(E=moduli, L=lengths, r=radii, F=loads)
def test_deflection_monotone_along_beam(E, L, r, F):
    spec = BeamSpec.circular(L, E, r)
    ys = [deflection_at(spec, F, x) for x in np.linspace(0, L, 25)]
    assert all(b >= a for a, b in zip(ys, ys[1:]))


def test_rejects_bad_inputs():
    with pytest.raises(DomainError):
        BeamSpec(0.0, 1e6, 1e-8)
    with pytest.raises(DomainError):
        BeamSpec(0.1, -1.0, 1e-8)
    spec = BeamSpec.circular(0.1, 1e6, 0.01)
    with pytest.raises(DomainError):
        deflection_at(spec, 1.0, 0.2)
    with pytest.raises(DomainError):
        modulus_from_tip(1.0, 0.1, 0.01, 0.0)
    with pytest.raises(DomainError):
        second_moment_circle(0.0)
