import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from blockmap import profile as prof


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.3, max_value=0.7))
def test_series_and_closed_form_agree_near_switch(x):
    assert abs(prof.phi_kernel(x) - prof.phi_kernel(x, closed_form=True)) < 1e-10
    assert abs(prof.rho_kernel(x) - prof.rho_kernel(x, closed_form=True)) < 1e-10


def test_kernels_are_finite_for_large_arguments():
    x = np.array([10.0, 1e3, 1e6])
    assert np.all(np.isfinite(prof.phi_kernel(x)))
    assert np.all(np.isfinite(prof.rho_kernel(x)))


@pytest.mark.parametrize("r", [0.3, 1.0, 2.2, 3.5])
def test_rho_is_derivative_of_phi(r):
    h = 1e-4
    slope = (prof.phi(r + h) - prof.phi(r - h)) / (2 * h)
    assert abs(slope - prof.rho(r)) < 1e-6


def test_density_integrates_to_one():
    total, _ = integrate.quad(lambda r: prof.rho(r) if r > 0 else 0.0, 0, 12, limit=200)
    assert abs(total - 1) < 1e-8


def test_boundary_values():
    assert prof.phi(0) == 0
    assert abs(prof.phi(20) - 1) < 1e-8
    with pytest.raises(ValueError):
        prof.phi(-1)
    with pytest.raises(ValueError):
        prof.rho(0)


@pytest.mark.parametrize("mu, r", [(0.1, 0.5), (1.0, 1.0), (3.0, 2.0)])
def test_contour_branches_are_conjugate(mu, r):
    assert abs(prof.contour_bracket(mu, r).imag) < 1e-12


def test_profile_curve_invariants():
    curve = prof.profile_curve(np.linspace(0, 4, 21), crosscheck=True)
    checks = curve.check()
    assert checks["phi_monotone"] and checks["phi_in_unit_interval"] and checks["rho_nonnegative"]
    assert checks["max_contour_deviation"] < 1e-8


@pytest.mark.parametrize("k", [1.2, 1.5, 2.0])
def test_fisher_fit_recovers_planted_exponent(k):
    assert abs(prof.fisher_tail_exponent(2.5, 4.0, density=lambda r: math.exp(-r ** k)) - k) < 1e-10


def test_fisher_fit_rejects_bad_windows():
    with pytest.raises(ValueError):
        prof.fisher_tail_exponent(1.0, 3.0)
    with pytest.raises(ValueError, match="underflow"):
        prof.fisher_tail_exponent(2.5, 4.0, density=lambda r: float(np.exp(-r ** 80)))


@pytest.mark.parametrize("r", [0.6, 1.5])
def test_rho_is_derivative_of_phi_more_points(r):
    h = 1e-4
    assert abs((prof.phi(r + h) - prof.phi(r - h)) / (2 * h) - prof.rho(r)) < 1e-5
