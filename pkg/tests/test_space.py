import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weingarten.errors import BoundaryError, ConfigError, DomainError
from weingarten.space import (ModelPoint, SpaceParams, gauss_K, geodesic_radius,
                              lambda_factor, metric_at)


@pytest.mark.parametrize("name, expected", [
    ("R3", (0.0, 0.0)), ("H2xR", (-1.0, 0.0)), ("S2xR", (1.0, 0.0)),
    ("Nil3", (0.0, 1.0)), ("S3", (4.0, 1.0)), ("Berger", (4.0, 0.1)),
])
def test_named_spaces(name, expected):
    p = SpaceParams.from_name(name)
    assert (p.kappa, p.tau) == expected


def test_hyperbolic_space_rejected():
    with pytest.raises(ConfigError):
        SpaceParams.from_name("H3")


@pytest.mark.parametrize("bad", [math.nan, math.inf, "1"])
def test_params_validated(bad):
    with pytest.raises(ConfigError):
        SpaceParams(bad, 0.0)


def test_disk_radius():
    assert SpaceParams(-1.0, 0.0).rho_max == 2.0
    assert SpaceParams(-4.0, 0.3).rho_max == 1.0
    assert math.isinf(SpaceParams(1.0, 0.0).rho_max)


def test_boundary_rejected():
    p = SpaceParams(-1.0, 0.0)
    with pytest.raises(BoundaryError):
        lambda_factor(2.0, p)
    with pytest.raises(DomainError):
        lambda_factor(-0.1, p)


@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(-0.9, 0.9), st.floats(-0.9, 0.9),
       st.floats(-5, 5))
def test_metric_positive_definite(kappa, tau, x1, x2, x3):
    p = SpaceParams(kappa, tau)
    if kappa < 0 and math.hypot(x1, x2) >= 0.99 * p.rho_max:
        return
    g = metric_at((x1, x2, x3), p)
    assert np.allclose(g, g.T)
    assert np.linalg.eigvalsh(g).min() > 0


def test_metric_flat_and_vertical_field():
    assert np.allclose(metric_at(ModelPoint(0.3, -0.2, 1.0), SpaceParams(0, 0)), np.eye(3))
    # the vertical field has unit length in every space
    g = metric_at((0.4, 0.1, 0.0), SpaceParams(4.0, 0.7))
    assert g[2, 2] == pytest.approx(1.0)


def test_metric_horizontal_block():
    p = SpaceParams(-1.0, 0.5)
    x1, x2 = 0.3, 0.4
    lam = 1.0 / (1.0 - 0.25 * (x1 * x1 + x2 * x2))
    g = metric_at((x1, x2, 0.0), p)
    assert g[0, 2] == pytest.approx(0.5 * lam * x2)
    assert g[1, 2] == pytest.approx(-0.5 * lam * x1)
    assert g[0, 0] == pytest.approx(lam**2 + (0.5 * lam * x2) ** 2)


def test_gauss_K_space_forms():
    # in R^3 and S^3 the bundle defect vanishes, so the angle drops out
    assert gauss_K(1.0, 0.3, SpaceParams(0, 0)) == 1.0
    assert gauss_K(0.0, 0.8, SpaceParams(4.0, 1.0)) == pytest.approx(1.0)
    assert gauss_K(0.0, 1.0, SpaceParams(1.0, 0.0)) == pytest.approx(1.0)


def test_geodesic_radius():
    assert geodesic_radius(0.5, SpaceParams(0, 0)) == pytest.approx(0.5)
    assert geodesic_radius(1.0, SpaceParams(-1, 0)) == pytest.approx(2 * math.atanh(0.5))
    assert geodesic_radius(2.0, SpaceParams(1, 0)) == pytest.approx(2 * math.atan(1.0))
