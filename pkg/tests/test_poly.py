import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardclock.equilibria import equilibrium_polynomial
from hardclock.errors import DegenerateError
from hardclock.model import NormParams
from hardclock.poly import (
    RealPolynomial,
    derivative,
    discriminant,
    resultant,
    roots,
    sylvester_matrix,
)


def sorted_real(r):
    return np.sort(np.real(r))


def test_trim_and_degree():
    p = RealPolynomial([1.0, 2.0, 0.0, 1e-16])
    assert p.degree == 1
    assert p.lead == 2.0
    z = RealPolynomial([0.0, 0.0])
    assert z.is_zero and z.degree == -1


def test_roots_simple():
    assert sorted_real(roots(RealPolynomial([-1, 0, 1]))) == pytest.approx([-1, 1])
    assert sorted_real(roots(RealPolynomial([2, -3, 1]))) == pytest.approx([1, 2])


def test_roots_degenerate():
    with pytest.raises(DegenerateError):
        roots(RealPolynomial([0.0]))
    with pytest.raises(DegenerateError):
        roots(RealPolynomial([5.0]))


def test_roots_conjugate_pairs_and_residual():
    p = RealPolynomial([1, 0, 0, 0, 1])  # x^4 + 1
    r = roots(p)
    assert len(r) == 4
    for v in r:
        assert np.min(np.abs(r - np.conj(v))) <= 1e-10
        assert abs(np.polyval(p.coeffs[::-1], v)) <= 1e-8 * (1 + np.linalg.norm(p.coeffs))


def test_equilibrium_roots_match_bisection(oracle_roots):
    p = NormParams(3, 0.25, 0.3)
    r = roots(equilibrium_polynomial(p))
    pos = sorted(v.real for v in r if abs(v.imag) < 1e-7 and v.real > 1e-9)
    assert pos == pytest.approx(oracle_roots(3, 0.25, 0.3), abs=1e-9)


def test_derivative():
    assert derivative(RealPolynomial([0, 0, 0, 1])).coeffs == pytest.approx([0, 0, 3])
    assert derivative(RealPolynomial([5])).is_zero
    d = derivative(equilibrium_polynomial(NormParams(3, 1, 1)))
    assert d.coeffs == pytest.approx([0, 4, -18, 44, -30, 6])


def test_resultant_convention():
    a, b = 0.7, -1.3
    # Res = lead(p)^deg(q) * prod q(root of p) = q(a) = a - b
    assert resultant(RealPolynomial([-a, 1]), RealPolynomial([-b, 1])) == pytest.approx(a - b)
    assert resultant(RealPolynomial([1, 0, 1]), RealPolynomial([-1, 0, 1])) == pytest.approx(4)
    shared = RealPolynomial.from_roots([1.0, 2.0])
    other = RealPolynomial.from_roots([2.0, -5.0, 3.0])
    assert abs(resultant(shared, other)) <= 1e-10


def test_sylvester_shape_and_rows():
    m = sylvester_matrix(RealPolynomial([1, 2, 3]), RealPolynomial([4, 5]))
    assert m.shape == (3, 3)
    # p rows first, highest degree leftmost
    assert m[0].tolist() == [3, 2, 1]
    assert m[1].tolist() == [5, 4, 0]
    assert m[2].tolist() == [0, 5, 4]


def test_resultant_zero_polynomial():
    with pytest.raises(DegenerateError):
        resultant(RealPolynomial([0.0]), RealPolynomial([1, 1]))


def test_discriminant_examples():
    b, c = 1.7, -0.4
    assert discriminant(RealPolynomial([c, b, 1])) == pytest.approx(b * b - 4 * c)
    assert discriminant(RealPolynomial([2, -3, 1])) == pytest.approx(1)
    assert abs(discriminant(RealPolynomial.from_roots([1, 1, 2]))) <= 1e-12
    with pytest.raises(DegenerateError):
        discriminant(RealPolynomial([1, 1]))


def test_discriminant_small_at_first_fold():
    p = equilibrium_polynomial(NormParams(3, 0.25, 0.09098145002090))
    far = equilibrium_polynomial(NormParams(3, 0.25, 0.3))
    assert abs(discriminant(p)) < 1e-6 * abs(discriminant(far))


def product_form(lead, rs):
    n = len(rs)
    prod = 1.0
    for a, b in itertools.combinations(rs, 2):
        prod *= (a - b) ** 2
    return lead ** (2 * n - 2) * prod


@settings(max_examples=100, deadline=None)
@given(
    rs=st.lists(st.floats(-3, 3), min_size=2, max_size=6),
    lead=st.floats(0.5, 2.0) | st.floats(-2.0, -0.5),
)
def test_discriminant_matches_root_product(rs, lead):
    p = RealPolynomial(lead * np.asarray(RealPolynomial.from_roots(rs).coeffs))
    expected = product_form(lead, rs)
    got = discriminant(p)
    scale = abs(lead) ** (2 * len(rs) - 2) * 6.0 ** (len(rs) * (len(rs) - 1))
    assert got == pytest.approx(expected, rel=1e-6, abs=1e-9 * scale)


@settings(max_examples=100, deadline=None)
@given(rs=st.lists(st.floats(-3, 3), min_size=1, max_size=6), lead=st.floats(0.5, 2.0))
def test_roots_reconstruct_coefficients(rs, lead):
    rs = sorted(rs)
    if any(b - a < 0.05 for a, b in zip(rs, rs[1:])):
        return
    p = RealPolynomial(lead * np.asarray(RealPolynomial.from_roots(rs).coeffs))
    back = lead * np.real(np.poly(roots(p)))[::-1]
    c = np.asarray(p.coeffs)
    assert np.linalg.norm(back - c) <= 1e-6 * np.linalg.norm(c)


def test_close_roots_give_small_discriminant():
    p = RealPolynomial.from_roots([0.5, 0.5 + 5e-8, -1.0, 2.0])
    r = np.sort(np.real(roots(p)))
    assert np.min(np.diff(r)) < 1e-7
    assert abs(discriminant(p)) <= 1e-12
