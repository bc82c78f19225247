import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardclock.errors import RegimeError
from hardclock.model import (
    NormParams,
    RawParams,
    State,
    g_radial,
    normalize,
    reflect,
    vector_field,
)

PHI = (3 + math.sqrt(5)) / 2


def test_normalize_unit_scales():
    p = normalize(RawParams(-1, 3, -1, 1, 0.5))
    assert (p.alpha, p.omega, p.input) == pytest.approx((3, 1, 0.5), abs=1e-15)


def test_normalize_rescaled():
    p = normalize(RawParams(-4, 6, -1, 1, 2))
    assert (p.alpha, p.omega, p.input) == pytest.approx((3, 0.25, 0.25), abs=1e-15)


@pytest.mark.parametrize(
    "raw",
    [
        RawParams(-1, 1, -1, 1),  # sigma1^2 - 4 sigma0 sigma2 < 0
        RawParams(1, 3, -1, 1),
        RawParams(-1, 3, 1, 1),
        RawParams(-1, -3, -1, 1),
    ],
)
def test_normalize_rejects_other_regimes(raw):
    assert not raw.hard_excitation
    with pytest.raises(RegimeError):
        normalize(raw)


def test_negative_input_folds_to_positive():
    assert normalize(RawParams(-1, 3, -1, 1, -0.5)).input == 0.5
    assert reflect(State(1.0, -2.0)) == State(-1.0, 2.0)


@given(
    alpha=st.floats(2.01, 8),
    omega=st.floats(0.01, 5),
    inp=st.floats(0, 5),
    s0=st.floats(0.1, 10),
    s2=st.floats(0.1, 10),
)
def test_normalize_round_trip(alpha, omega, inp, s0, s2):
    # synthesize raw coefficients that must map back to (alpha, omega, inp)
    raw = RawParams(-s0, alpha * math.sqrt(s0 * s2), -s2, omega * s0, inp * s0 / math.sqrt(s2 / s0))
    p = normalize(raw)
    assert p.alpha == pytest.approx(alpha, rel=1e-12)
    assert p.omega == pytest.approx(omega, rel=1e-12)
    assert p.input == pytest.approx(inp, rel=1e-12, abs=1e-14)
    assert p.alpha > 2


def test_vector_field_origin():
    assert vector_field(NormParams(3, 1, 0.5), State(0, 0)) == (0.5, 0)


def test_vector_field_on_invariant_circle():
    dx, dy = vector_field(NormParams(3, 1, 0), State(PHI, 0))
    assert dx == pytest.approx(0, abs=1e-14)
    assert dy == pytest.approx(PHI, abs=1e-14)


def test_vector_field_near_published_fold_point():
    dx, dy = vector_field(NormParams(3, 0.25, 0.654), State(-0.1368, 2.6066))
    assert abs(dx) <= 2e-2 and abs(dy) <= 2e-2


def test_g_radial_values():
    assert g_radial(3, 2) == 1
    assert g_radial(3, PHI) == pytest.approx(0, abs=1e-14)
    assert g_radial(3, 1 / PHI) == pytest.approx(0, abs=1e-14)
    assert g_radial(5.5, 0) == -1


@settings(max_examples=50)
@given(
    alpha=st.floats(2.01, 6),
    omega=st.floats(0.01, 3),
    r=st.floats(0, 5),
    theta=st.floats(0, 2 * math.pi),
)
def test_rotational_structure_without_input(alpha, omega, r, theta):
    c, s = math.cos(theta), math.sin(theta)
    dx, dy = vector_field(NormParams(alpha, omega, 0), State(r * c, r * s))
    radial = dx * c + dy * s
    tangential = -dx * s + dy * c
    assert radial == pytest.approx(r * g_radial(alpha, r), abs=1e-10 * (1 + r**3))
    assert tangential == pytest.approx(omega * r, abs=1e-10 * (1 + r**3))


@given(
    inp=st.floats(-3, 3),
    x=st.floats(-4, 4),
    y=st.floats(-4, 4),
)
def test_input_reflection_symmetry(inp, x, y):
    a = vector_field(NormParams(3, 0.7, -inp), State(-x, -y))
    b = vector_field(NormParams(3, 0.7, inp), State(x, y))
    assert np.allclose(a, [-b[0], -b[1]], atol=1e-12)
