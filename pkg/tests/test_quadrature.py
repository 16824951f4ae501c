"""Adaptive Gauss-Legendre path integration."""

import math

import numpy as np
import pytest

from minsurf import expr as ex
from minsurf.domain import DomainSpec
from minsurf.errors import NoConvergence, SingularPath
from minsurf.quadrature import integrate_path, integrate_segments

from conftest import random_complex


def test_constant_integrand():
    assert abs(integrate_path(ex.const(1), 0, 1 + 1j, 1e-12) - (1 + 1j)) < 1e-12


def test_exponential_antiderivative():
    val = integrate_path(ex.exp(ex.Z), 0, 1, 1e-12)
    assert abs(val - (math.e - 1)) < 1e-12


def test_inverse_square_against_antiderivative_and_trapezoid():
    # antiderivative -1/z gives exactly 1/2 on [1, 2]
    val = integrate_path(ex.parse("1/z^2"), 1, 2, 1e-12)
    assert abs(val - 0.5) < 1e-12
    # brute-force trapezoid oracle, 10^6 steps
    t = np.linspace(1.0, 2.0, 1_000_001)
    oracle = np.trapezoid(1.0 / t ** 2, t)
    assert abs(val - oracle) < 1e-10


def test_additivity_collinear(rng):
    f = ex.parse("exp(z)*z^3-sinh(z)")
    tol = 1e-12
    for _ in range(5):
        z0, z2 = random_complex(rng, 2)
        z1 = 0.5 * (z0 + z2)
        two = (integrate_path(f, z0, z1, tol) + integrate_path(f, z1, z2, tol))
        one = integrate_path(f, z0, z2, tol)
        assert abs(two - one) <= 2 * tol


def test_path_independence_polyline(rng):
    # two different L-shaped routes between the same endpoints agree
    f = ex.parse("(1-z^2)*exp(-z)")
    tol = 1e-12
    for _ in range(5):
        a, b = random_complex(rng, 2)
        corner1 = complex(b.real, a.imag)
        corner2 = complex(a.real, b.imag)
        r1 = integrate_path(f, a, corner1, tol) + integrate_path(f, corner1, b, tol)
        r2 = integrate_path(f, a, corner2, tol) + integrate_path(f, corner2, b, tol)
        assert abs(r1 - r2) <= 4 * tol


def test_batched_segments_match_single(rng):
    f = ex.parse("exp(z)/(z+3)")
    a = random_complex(rng, 16)
    b = random_complex(rng, 16)
    batch = integrate_segments(f, a, b, 1e-12)
    for ai, bi, got in zip(a, b, batch):
        assert abs(integrate_path(f, ai, bi, 1e-12) - got) < 2e-12


def test_puncture_on_segment_rejected():
    dom = DomainSpec(-1, 1, -1, 1, punctures=(0j,))
    with pytest.raises(SingularPath):
        integrate_path(ex.parse("1/z"), -1, 1, 1e-12, domain=dom)


def test_singular_evaluation_detected():
    # integrand blows up mid-segment without a declared puncture
    with pytest.raises((SingularPath, NoConvergence)):
        integrate_path(ex.parse("1/z"), -1 + 1e-13j, 1, 1e-12)


def test_depth_cap_raises():
    with pytest.raises(NoConvergence):
        integrate_segments(ex.parse("1/z"), [-1 + 1e-8j], [1 + 1e-8j],
                           1e-14, max_depth=3)


def test_tolerance_rejects_nonpositive():
    with pytest.raises(ValueError):
        integrate_path(ex.Z, 0, 1, 0.0)
