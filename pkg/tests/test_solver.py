import math

import numpy as np
import pytest

from weingarten.classes import ConstantH, ConstantKe, GeneralPhi, PrescribedH
from weingarten.errors import ConfigError, DomainError, MaxSExceeded
from weingarten.solver import (ENTIRE, INCONCLUSIVE, SPHERE, SolveConfig, integrate_canonical,
                               monotonicity_check, reflection_defect, series_coefficient,
                               series_init, solve_rho_dd, weingarten_residual)
from weingarten.space import SpaceParams


def test_round_sphere_R3():
    ex = integrate_canonical(ConstantH(1.0), SpaceParams(0, 0))
    assert ex.classification == SPHERE
    assert ex.diagnostics["turning_s"] == pytest.approx(math.pi / 2, abs=1e-9)
    assert ex.diagnostics["total_height"] == pytest.approx(2.0, abs=1e-9)
    assert np.max(np.abs(ex.rho - np.sin(ex.s))) < 1e-8


def test_plane_is_entire():
    ex = integrate_canonical(ConstantH(0.0), SpaceParams(0, 0))
    assert ex.classification == ENTIRE
    assert np.allclose(ex.h, 0.0)
    assert monotonicity_check(ex).excluded == "totally geodesic slice"


def test_negative_constant_flipped():
    ex = integrate_canonical(ConstantH(-1.0), SpaceParams(0, 0))
    assert ex.flipped and ex.classification == SPHERE


@pytest.mark.parametrize("kappa, tau", [(0, 1), (0, 0.5), (4, 0.1), (1, 0)])
@pytest.mark.parametrize("H", [0.3, 1.0])
def test_cmc_spheres(kappa, tau, H):
    # regression: small H in Nil3 used to fail on the first step
    ex = integrate_canonical(ConstantH(H), SpaceParams(kappa, tau))
    assert ex.classification == SPHERE
    assert monotonicity_check(ex).passed


@pytest.mark.parametrize("H, expected", [(0.4, ENTIRE), (0.6, SPHERE)])
def test_h2r_cmc_dichotomy(H, expected):
    assert integrate_canonical(ConstantH(H), SpaceParams(-1, 0)).classification == expected


def test_series_coefficient_ke():
    p = SpaceParams(0.0, 0.5)
    assert series_coefficient(ConstantKe(2.0), p, 1e-4) == pytest.approx(-(2.0 + 0.25) / 6)


def test_series_init_round_sphere():
    st = series_init(ConstantH(1.0), SpaceParams(0, 0))
    # rho = sin s to third order
    assert st.rho == pytest.approx(math.sin(st.s), abs=1e-15)
    assert st.h == pytest.approx(1 - math.cos(st.s), rel=1e-6)


@pytest.mark.parametrize("cls", [ConstantH(0.8), GeneralPhi("1 + 0.2*sqrt(t)"),
                                 PrescribedH("1 + 0.3*v"), ConstantKe(1.5)])
def test_solve_rho_dd_zero_residual(cls):
    p = SpaceParams(4.0, 0.1)
    rho, drho = 0.3, 0.6
    dd = solve_rho_dd(rho, drho, cls, p)
    assert abs(weingarten_residual(rho, drho, dd, cls, p)) < 1e-11


def test_residual_small_along_profile():
    ex = integrate_canonical(GeneralPhi("0.8 + 0.3*tanh(t) + 0.1*v"), SpaceParams(0, 1))
    assert np.nanmax(ex.residual) < 1e-8


def test_reflection_matches_continuation():
    ex = integrate_canonical(ConstantKe(1.0), SpaceParams(4.0, 0.1))
    assert reflection_defect(ex) < 1e-10


def test_state_at_interpolates_samples():
    ex = integrate_canonical(PrescribedH("1 + 0.3*v"), SpaceParams(1, 0))
    for i in (3, ex.lower - 1, ex.s.size - 5):
        q = ex.state_at(ex.s[i])
        assert q.rho == pytest.approx(ex.rho[i], abs=1e-8)
        assert q.h == pytest.approx(ex.h[i], abs=1e-8)
    with pytest.raises(DomainError):
        ex.state_at(ex.s[-1] + 1.0)


def test_max_s_partial():
    with pytest.raises(MaxSExceeded) as exc:
        integrate_canonical(ConstantH(0.05), SpaceParams(0, 1), SolveConfig(max_s=2.0))
    part = exc.value.partial
    assert part.classification == INCONCLUSIVE
    assert part.s[-1] <= 2.0 + 1e-12


def test_config_validation():
    with pytest.raises(ConfigError):
        SolveConfig(s0=-1.0)
    with pytest.raises(ConfigError):
        SolveConfig(rel_tol=math.nan)


def test_deterministic():
    a = integrate_canonical(GeneralPhi("1 + 0.2*sqrt(t)"), SpaceParams(4.0, 0.1))
    b = integrate_canonical(GeneralPhi("1 + 0.2*sqrt(t)"), SpaceParams(4.0, 0.1))
    assert np.array_equal(a.rho, b.rho) and np.array_equal(a.h, b.h)
