import math

import numpy as np
import pytest

from weingarten.classes import ConstantKe
from weingarten.closed_forms import (ConeSpec, cone_height, cone_heights, cone_rho_limit,
                                     cone_slope, cylinder_ke, ke_delta, ke_domain_limit,
                                     ke_x0, minkowski_rhs)
from weingarten.errors import ConfigError, DomainError
from weingarten.space import SpaceParams


def test_nil_equator_exact():
    # delta = 1 - log(1 + 2x^2) in Nil3 with c = 1
    p = SpaceParams(0.0, 1.0)
    assert ke_delta(0.5, 1.0, p) == pytest.approx(1 - math.log(1.5), rel=1e-14)
    assert ke_x0(1.0, p) == pytest.approx(math.sqrt((math.e - 1) / 2), rel=1e-12)


def test_space_form_limit_continuous():
    x, c = 0.3, 1.0
    exact = ke_delta(x, c, SpaceParams(4.0, 1.0))
    assert exact == pytest.approx(1 - 2 * x * x / (1 + x * x), rel=1e-14)
    near = ke_delta(x, c, SpaceParams(4.0 + 1e-9, 1.0))
    assert near == pytest.approx(exact, abs=1e-8)


@pytest.mark.parametrize("kappa, tau, c, x0", [
    (-1.0, 0.0, 1.0, 0.9897851532604589),
    (4.0, 0.0, 1.0, 0.87269362089783),
    (4.0, 0.1, 1.0, 0.8755518932494604),
])
def test_equator_frozen(kappa, tau, c, x0):
    p = SpaceParams(kappa, tau)
    assert ke_x0(c, p) == pytest.approx(x0, rel=1e-12)
    assert ke_delta(x0, c, p) == pytest.approx(0.0, abs=1e-12)


def test_domain_limit():
    assert ke_domain_limit(SpaceParams(-1.0, 0.0)) == 2.0
    assert ke_domain_limit(SpaceParams(1.0, 0.5)) == math.inf
    assert ke_domain_limit(SpaceParams(12.0, 1.0)) == 1.0
    with pytest.raises(DomainError):
        ke_delta(2.0, 1.0, SpaceParams(-1.0, 0.0))


def test_minkowski_rhs_sign():
    p = SpaceParams(0.0, 0.0)
    # d(y^2)/dx /2 = -x c for the sphere of radius 1/sqrt(c) in R^3
    assert minkowski_rhs(0.3, 0.5, ConstantKe(2.0), p) == pytest.approx(-0.6)


def test_ke_x0_requires_positive():
    with pytest.raises(ConfigError):
        ke_x0(0.0, SpaceParams(0.0, 0.0))


def test_cone_in_R3_is_straight():
    spec, p = ConeSpec(0.6), SpaceParams(0.0, 0.0)
    slope = math.sqrt(1 - 0.36) / 0.6
    assert cone_slope(0.5, spec, p) == pytest.approx(slope)
    assert cone_height(0.5, spec, p) == pytest.approx(0.5 * slope)


def test_cone_heights_match_pointwise():
    spec, p = ConeSpec(0.5, c=0.2), SpaceParams(4.0, 0.1)
    r = np.linspace(0.0, 1.0, 11)
    hs = cone_heights(r, spec, p)
    assert hs[0] == pytest.approx(0.2)
    assert hs[7] == pytest.approx(cone_height(r[7], spec, p), abs=1e-12)


def test_cone_limits():
    assert cone_rho_limit(ConeSpec(0.5), SpaceParams(0.0, 1.0)) == pytest.approx(math.sqrt(3))
    with pytest.raises(ConfigError):
        ConeSpec(0.0)
    with pytest.raises(DomainError):
        cone_height(3.0, ConeSpec(0.5), SpaceParams(-1.0, 0.0))


def test_cylinder_ke():
    assert cylinder_ke(SpaceParams(1.0, 0.5)) == -0.25
