import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from gegencoef.errors import BranchError, DomainError, UnsupportedMethodError
from gegencoef.specfun import (
    EllipseGeometry,
    GegenbauerParam,
    c_norm,
    ellipse_perimeter,
    elliptic_e,
    gamma_ratio,
    h_norm,
    hyp2f1_kernel,
    hyp2f1_kernel_degrees,
    integer_lambda_kernel,
    joukowski_root,
    log_gamma_signed,
    pochhammer,
    upsilon,
)


def test_param_validation():
    with pytest.raises(DomainError):
        GegenbauerParam(0.0)
    with pytest.raises(DomainError):
        GegenbauerParam(-0.5)
    with pytest.raises(DomainError):
        GegenbauerParam.chebyshev_t().require_proper()
    assert GegenbauerParam.chebyshev_t().is_chebyshev_t_limit
    assert GegenbauerParam(-0.25).lam == -0.25


def test_gamma_ratio_example(oracles):
    assert gamma_ratio(10, 1, 0.5) == pytest.approx(oracles["gamma_ratio_11_10.5"], rel=1e-13)
    # leading asymptote n^(a-b)(1 + (a-b)(a+b-1)/(2n))
    asym = math.sqrt(10) * (1 + 0.5 * 0.5 / 20)
    assert gamma_ratio(10, 1, 0.5) == pytest.approx(asym, rel=1e-4)


def test_gamma_ratio_domain():
    with pytest.raises(DomainError):
        gamma_ratio(1, -1.5, 0.5)


def test_upsilon_example():
    assert upsilon(1, 2, 1) == pytest.approx(math.exp(0.5 / 1 + 1 / 24 + 1), rel=1e-15)
    assert upsilon(10, 1, 0.5) * math.sqrt(10) >= gamma_ratio(10, 1, 0.5)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 400), a=st.floats(-0.4, 12), b=st.floats(-0.4, 12))
def test_upsilon_dominates_gamma_ratio(n, a, b):
    # the inequality holds for a <= 1 or a >= b; every use in the bounds
    # except the Zhao comparator lies in this range
    if n + a <= 1 or n + b <= 1 or 1 < a < b:
        return
    assert gamma_ratio(n, a, b) <= upsilon(n, a, b) * n ** (a - b) * (1 + 1e-13)


def test_upsilon_fails_between_one_and_b():
    assert gamma_ratio(1, 3.0, 4.0) == pytest.approx(0.25, rel=1e-14)
    assert upsilon(1, 3.0, 4.0) < 0.125


@settings(max_examples=100, deadline=None)
@given(x=st.floats(-60, 60).filter(lambda v: abs(v - round(v)) > 1e-6))
def test_log_gamma_signed_matches_scipy(x):
    lg, s = log_gamma_signed(x)
    assert s == special.gammasgn(x)
    assert lg == pytest.approx(special.gammaln(x), rel=1e-12, abs=1e-12)


def test_log_gamma_pole():
    with pytest.raises(DomainError):
        log_gamma_signed(-3.0)


def test_pochhammer():
    assert pochhammer(0.0, 2) == 0.0
    assert pochhammer(1.0, 5) == pytest.approx(120.0, rel=1e-14)
    assert pochhammer(-2.5, 3) == pytest.approx(-2.5 * -1.5 * -0.5)


def test_c_norm_and_h_norm(oracles):
    for n, lam, val in oracles["c_norm"]:
        assert c_norm(n, lam) == pytest.approx(val, rel=1e-12)
    for n, lam, val in oracles["h_norm"]:
        assert h_norm(n, lam) == pytest.approx(val, rel=1e-10)


def test_c_norm_asymptotic_modes():
    lam = 2.5
    n = 400
    assert c_norm(n, lam, "asymptotic") == pytest.approx(c_norm(n, lam), rel=1e-4)
    alpha = 0.25
    n = 200
    exact = c_norm(n, alpha * n)
    assert c_norm(n, alpha * n, "diagonal", alpha=alpha) / exact == pytest.approx(1.0, rel=0.01)
    with pytest.raises(UnsupportedMethodError):
        c_norm(3, 1.0, "bogus")


def test_kernel_example(oracles):
    assert hyp2f1_kernel(1, 0.5, 0.25) == pytest.approx(oracles["hyp2f1_2_half_5half_quarter"], rel=1e-14)


def test_kernel_against_oracle(oracles):
    for n, lam, x, val in oracles["kernel"]:
        assert hyp2f1_kernel(n, lam, x) == pytest.approx(val, rel=1e-12), (n, lam, x)
    for n, lam, z, val in oracles["kernel_complex"]:
        got = hyp2f1_kernel(n, lam, complex(*z))
        assert abs(got - complex(*val)) <= 1e-12 * abs(complex(*val))


def test_kernel_limits():
    # lam = 1 collapses to one; Chebyshev-T limit gives 1/(1-x)
    assert hyp2f1_kernel(7, 1.0, 0.6) == 1.0
    assert hyp2f1_kernel(7, GegenbauerParam.chebyshev_t(), 0.6) == pytest.approx(1 / 0.4, rel=1e-14)
    with pytest.raises(DomainError):
        hyp2f1_kernel(2, 0.5, 1.0)
    with pytest.raises(UnsupportedMethodError):
        hyp2f1_kernel(2, -0.25, 0.5, method="euler")


@settings(max_examples=150, deadline=None)
@given(n=st.integers(0, 60), lam=st.floats(0.05, 6.0), x=st.floats(-0.9, 0.9))
def test_kernel_series_matches_euler(n, lam, x):
    s = hyp2f1_kernel(n, lam, x, "series")
    e = hyp2f1_kernel(n, lam, x, "euler")
    assert abs(s - e) <= 1e-12 * abs(s)


def test_kernel_asymptotic_quality():
    lam, x = 0.5, 0.25
    for n in (50, 200):
        exact = hyp2f1_kernel(n, lam, x)
        assert abs(hyp2f1_kernel(n, lam, x, "asymptotic") / exact - 1) < 5.0 / n**2


@pytest.mark.parametrize("lam", [1, 2, 3, 5])
def test_integer_lambda_finite_sum(lam):
    for n in (0, 3, 12):
        for x in (-0.8, 0.1, 0.7):
            assert integer_lambda_kernel(n, lam, x) == pytest.approx(hyp2f1_kernel(n, lam, x), rel=1e-13)


def test_joukowski_root():
    u = joukowski_root(2.0)
    assert u == pytest.approx(2 + math.sqrt(3))
    u = joukowski_root(-2.0)
    assert u.real == pytest.approx(-2 - math.sqrt(3))
    pts = EllipseGeometry(2.5).points(64)
    assert np.allclose(np.abs(joukowski_root(pts)), 2.5, rtol=1e-13)
    with pytest.raises(BranchError):
        joukowski_root(0.3)


def test_ellipse_geometry():
    g = EllipseGeometry(2.0)
    assert g.semi_major == 1.25 and g.semi_minor == 0.75
    assert g.eccentric_param == pytest.approx(0.8)
    with pytest.raises(DomainError):
        EllipseGeometry(0.9)


def test_perimeter(oracles):
    for rho, val in oracles["perimeter"].items():
        assert ellipse_perimeter(float(rho)) == pytest.approx(val, rel=1e-14)
    assert ellipse_perimeter(2.0, "jameson_bound") == pytest.approx(6.7123889803846897, rel=1e-15)
    assert ellipse_perimeter(1.0) == pytest.approx(4.0, abs=1e-12)
    assert ellipse_perimeter(1.0, "jameson_bound") == pytest.approx(4.0, abs=1e-12)
    assert elliptic_e(0.0) == pytest.approx(math.pi / 2)


@settings(max_examples=100, deadline=None)
@given(rho=st.floats(1.0, 50.0))
def test_perimeter_below_jameson(rho):
    assert ellipse_perimeter(rho) <= ellipse_perimeter(rho, "jameson_bound") * (1 + 1e-14)


@pytest.mark.parametrize("lam", [0.25, 1.0, 3.5])
@pytest.mark.parametrize("x", [-0.907, 0.5, 0.95])
def test_kernel_degrees_matches_scalar(lam, x):
    ns = np.arange(0, 300, 7)
    block = hyp2f1_kernel_degrees(ns, lam, x)
    scalar = np.array([hyp2f1_kernel(int(n), lam, x) for n in ns])
    assert np.allclose(block, scalar, rtol=1e-13, atol=0)
    with pytest.raises(DomainError):
        hyp2f1_kernel_degrees([1, 2], lam, 1.0)
