import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volterra_norms.errors import DomainError
from volterra_norms.numrange import (
    Branch,
    RootKind,
    boundary_curve,
    boundary_point,
    crouzeix_ratio,
    golden_section_max,
    max_abs_on_W,
    roots_to_coeffs,
    support_function,
)
from volterra_norms.quadratic import MonicAtZeroQuad, RealQuadPoly, norm_v_squared

BOUND = 1 + math.sqrt(2)


def test_boundary_goldens():
    assert abs(boundary_point(0.0) - 0.5) < 1e-12
    assert abs(boundary_point(math.pi) - complex(2 / math.pi**2, 1 / math.pi)) < 1e-12
    assert abs(boundary_point(2 * math.pi) - complex(0, 1 / (2 * math.pi))) < 1e-12
    assert abs(boundary_point(2 * math.pi, Branch.SEGMENT) - boundary_point(2 * math.pi)) < 1e-12


def test_boundary_domain():
    with pytest.raises(DomainError):
        boundary_point(-0.1)
    with pytest.raises(DomainError):
        boundary_point(7.0, Branch.LOWER)


def test_series_matches_closed_form_across_cutoff():
    t = np.array([0.99e-4, 1.01e-4])
    z = boundary_curve(t)
    exact = (1 - np.cos(t)) / t**2 + 1j * (t - np.sin(t)) / t**2
    # closed form loses about half the digits here; series is the reference
    assert np.allclose(z, exact, atol=1e-7)
    assert abs(z[0] - z[1]) < 1e-5


@given(st.floats(0, 2 * math.pi))
def test_conjugate_branches(t):
    assert boundary_point(t, Branch.LOWER) == boundary_point(t, Branch.UPPER).conjugate()


@pytest.mark.parametrize("theta,expected", [(0, 0.5), (math.pi, 0.0), (-math.pi, 0.0), (math.pi / 2, 1 / math.pi)])
def test_support_function(theta, expected):
    assert support_function(theta) == pytest.approx(expected, abs=1e-15)


def test_support_consistency():
    t = np.linspace(0, 2 * math.pi, 4096)
    z = boundary_curve(t)
    pts = np.concatenate([z, z.conj(), 1j * np.linspace(-1, 1, 64) / (2 * math.pi)])
    for theta in np.linspace(-math.pi, math.pi, 64):
        h = np.max((np.exp(1j * theta) * pts).real)
        assert abs(h - support_function(theta)) <= 1e-6


def test_golden_section():
    x, fx = golden_section_max(lambda x: -(x - 0.3) ** 2, 0, 1)
    assert abs(x - 0.3) < 1e-6 and fx == pytest.approx(0, abs=1e-12)


def test_max_abs_examples():
    top, z = max_abs_on_W(0.0)
    assert top == pytest.approx(0.5, abs=1e-12)
    assert abs(z - 0.5) < 1e-6
    top, _ = max_abs_on_W(RealQuadPoly(0.685, -0.167))
    assert abs(top - 0.4255) < 1e-3
    top, _ = max_abs_on_W((1, 0, 0))
    assert top == pytest.approx(1.0)


def test_max_abs_complex_linear():
    # |z - i/5| peaks on the lower half, which the real-coefficient shortcut skips
    curve = boundary_curve(np.linspace(0, 2 * math.pi, 20001))
    pts = np.concatenate([curve, curve.conj(), 1j * np.linspace(-1, 1, 2001) / (2 * math.pi)])
    brute = np.max(np.abs(pts - 0.2j))
    top, z = max_abs_on_W(-0.2j)
    assert top == pytest.approx(brute, abs=1e-8)
    assert z.imag < 0


def test_max_abs_monic():
    top, _ = max_abs_on_W(MonicAtZeroQuad(-1, 1))
    assert top >= 1.0


def test_crouzeix_goldens():
    rep = crouzeix_ratio(RealQuadPoly(0.685, -0.167))
    assert abs(rep.norm - 0.6501) < 1e-3
    assert abs(rep.max_on_W - 0.4255) < 1e-3
    assert abs(rep.ratio - 1.5278) < 2e-3
    assert rep.ratio == rep.norm / rep.max_on_W
    rep0 = crouzeix_ratio(RealQuadPoly(0, 0))
    assert rep0.max_on_W == pytest.approx(0.25, abs=1e-12)
    assert rep0.ratio == pytest.approx(norm_v_squared()[0] / 0.25, abs=1e-8)


def test_crouzeix_frozen():
    # values of this implementation; the roots point differs from the
    # reference 1.5258 (see README)
    rep = crouzeix_ratio(roots_to_coeffs(RootKind.REAL_PAIR, 0.191, -0.876))
    assert rep.ratio == pytest.approx(1.528899, abs=1e-5)
    rep = crouzeix_ratio(roots_to_coeffs(RootKind.CONJUGATE_PAIR, 0, 1))
    assert rep.ratio <= BOUND
    assert rep.ratio == pytest.approx(0.9467, abs=1e-4)


def test_roots_to_coeffs():
    assert roots_to_coeffs(RootKind.REAL_PAIR, 1, 2) == (-3, 2)
    assert roots_to_coeffs(RootKind.CONJUGATE_PAIR, 0, 1) == (0, 1)
    s, t = roots_to_coeffs("RealPair", 0.191, -0.876)
    assert s == pytest.approx(0.685) and t == pytest.approx(-0.167316)


@given(st.floats(-2, 2), st.floats(-2, 2))
@settings(max_examples=40, deadline=None)
def test_ratio_bound_and_zero_in_W(s, t):
    rep = crouzeix_ratio(RealQuadPoly(s, t))
    assert rep.max_on_W >= abs(t) - 1e-15
    assert rep.ratio <= BOUND


@given(st.floats(0, 2 * math.pi), st.sampled_from([Branch.UPPER, Branch.LOWER]))
def test_boundary_points_obey_support(t, branch):
    z = boundary_point(t, branch)
    for theta in np.linspace(-math.pi, math.pi, 17):
        assert (cmath.exp(1j * theta) * z).real <= support_function(theta) + 1e-12
