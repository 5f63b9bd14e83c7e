import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weingarten.classes import GeneralPhi, ConstantKe
from weingarten.curvature import (brioschi_curvature, extrinsic_affine, extrinsic_curvature_s,
                                  mean_curvature_affine, umbilicity_split,
                                  fd_shape_operator_oracle, graph_curvatures_u, h_prime,
                                  mean_curvature_s, principal_curvatures, sigma_norm_sq)
from weingarten.errors import DomainError, SingularAxis
from weingarten.solver import integrate_canonical
from weingarten.space import SpaceParams, gauss_K

SPACES = [(0.0, 0.0), (-1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (4.0, 0.1), (-1.0, 0.5)]


def test_round_sphere_in_R3():
    p = SpaceParams(0.0, 0.0)
    s = 0.7
    assert mean_curvature_s(math.sin(s), math.cos(s), -math.sin(s), p) == pytest.approx(1.0)
    assert extrinsic_curvature_s(math.sin(s), -math.sin(s), p) == pytest.approx(1.0)
    assert h_prime((math.sin(s), math.cos(s)), p) == pytest.approx(math.sin(s))


def test_axis_and_radicand_guards():
    p = SpaceParams(0.0, 1.0)
    with pytest.raises(SingularAxis):
        mean_curvature_s(1e-9, 1.0, 0.0, p)
    with pytest.raises(DomainError):
        h_prime((1.0, 1.0), p)


@pytest.mark.parametrize("kappa, tau", SPACES)
def test_extrinsic_denominator_single_power(kappa, tau):
    """Regression: the rho'' coefficient carries (4 + kappa rho^2) once, not squared."""
    p = SpaceParams(kappa, tau)
    rho = 0.4
    _, b = extrinsic_affine(rho, p)
    single = (4 + kappa * rho**2) * (-4 + (kappa - 8 * tau**2) * rho**2) / (16 * rho)
    assert b == pytest.approx(single, rel=1e-14)
    if kappa != 0.0:
        squared = (4 + kappa * rho**2) ** 2 * (-4 + (kappa - 8 * tau**2) * rho**2) / (64 * rho)
        assert abs(b - squared) > 1e-3 * abs(b)


@pytest.mark.parametrize("kappa, tau", SPACES)
def test_graph_formulas_against_oracle(kappa, tau):
    p = SpaceParams(kappa, tau)
    rho_f = lambda u: 0.3 + 0.2 * u + 0.05 * u * u
    h_f = lambda u: 0.4 * u - 0.1 * u**3
    u = np.linspace(0.0, 1.0, 201)
    nu, H, Ke = graph_curvatures_u(u, rho_f(u), h_f(u), p)
    patch = lambda a, th: np.array([rho_f(a) * math.cos(th), rho_f(a) * math.sin(th), h_f(a)])
    for i in (10, 90, 180):
        Ho, Keo, nuo = fd_shape_operator_oracle(patch, u[i + 2], 0.3, p)
        assert nu[i] == pytest.approx(nuo, abs=1e-7)
        assert abs(H[i]) == pytest.approx(abs(Ho), abs=1e-5)
        assert Ke[i] == pytest.approx(Keo, abs=1e-5)


@pytest.mark.parametrize("kappa, tau", SPACES)
def test_s_formulas_on_canonical_profile(kappa, tau):
    p = SpaceParams(kappa, tau)
    ex = integrate_canonical(GeneralPhi("1 + 0.2*sqrt(t)"), p)
    patch = ex.patch()
    for i in (ex.lower // 4, ex.lower // 2):
        Ho, Keo, nuo = fd_shape_operator_oracle(patch, ex.s[i], 0.2, p)
        assert ex.drho[i] == pytest.approx(nuo, abs=1e-6)
        assert ex.H[i] == pytest.approx(abs(Ho), abs=1e-5)
        assert ex.Ke[i] == pytest.approx(Keo, abs=1e-5)


@pytest.mark.parametrize("kappa, tau", [(0.0, 1.0), (1.0, 0.0), (-1.0, 0.3)])
def test_brioschi_matches_gauss_equation(kappa, tau):
    p = SpaceParams(kappa, tau)
    ex = integrate_canonical(ConstantKe(1.0), p)
    i = ex.lower // 2
    K = ex.intrinsic_curvature(i)
    assert K == pytest.approx(gauss_K(ex.Ke[i], ex.drho[i], p), abs=1e-6)


def test_brioschi_round_sphere_patch():
    patch = lambda u, v: np.array([math.sin(u) * math.cos(v), math.sin(u) * math.sin(v),
                                   math.cos(u)])
    K = brioschi_curvature(patch, 0.8, 0.1, SpaceParams(0.0, 0.0))
    assert K == pytest.approx(1.0, abs=1e-6)


def test_principal_curvatures():
    k1, k2 = principal_curvatures(2.0, 3.0)
    assert (k1, k2) == pytest.approx((3.0, 1.0))
    assert sigma_norm_sq(2.0, 3.0) == pytest.approx(10.0)
    with pytest.raises(DomainError):
        sigma_norm_sq(0.5, 1.0)


@settings(max_examples=200)
@given(st.floats(-3, 5), st.floats(-1, 1), st.floats(0.01, 0.9), st.floats(-0.999, 0.999),
       st.floats(-50, 50))
def test_umbilicity_split_matches_difference(kappa, tau, frac, angle, ddrho):
    p = SpaceParams(kappa, tau)
    rho = frac * min(p.rho_max, 3.0)
    drho = angle / math.sqrt(1 + tau * tau * rho * rho)
    a, b = mean_curvature_affine(rho, drho, p)
    c, d = extrinsic_affine(rho, p)
    H, Ke = a + b * ddrho, c + d * ddrho
    k_par, w = umbilicity_split(rho, drho, p)
    assert (H - k_par) ** 2 + w * w == pytest.approx(H * H - Ke, rel=1e-8, abs=1e-8)
