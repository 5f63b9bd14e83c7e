import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weingarten.berger import (BergerPoint, antipodal_closure_check, chart_immersion,
                               embeddedness_check, fiber_period, hopf_project,
                               inverse_stereo_base, isometric_chart, profile_curve,
                               profile_to_stereo, pullback_metric, shanks, stereo_project)
from weingarten.classes import ConstantKe
from weingarten.errors import ConfigError, PoleError
from weingarten.solver import integrate_canonical
from weingarten.space import SpaceParams, metric_at

P = SpaceParams(4.0, 0.1)
coords = st.floats(-2.0, 2.0)


def test_fiber_period():
    assert fiber_period(P) == pytest.approx(0.2 * math.pi)
    with pytest.raises(ConfigError):
        fiber_period(SpaceParams(0.0, 1.0))


@settings(max_examples=50)
@given(coords, coords, st.floats(-10, 10))
def test_chart_lands_on_sphere_and_is_periodic(x1, x2, x3):
    q = chart_immersion((x1, x2, x3), P)
    assert abs(q.z) ** 2 + abs(q.w) ** 2 == pytest.approx(1.0, abs=1e-12)
    q2 = chart_immersion((x1, x2, x3 + fiber_period(P)), P)
    assert np.allclose(q.as_r4(), q2.as_r4(), atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(coords, coords, st.floats(-3, 3))
def test_isometric_chart_pullback(x1, x2, x3):
    g = pullback_metric((x1, x2, x3), P)
    assert np.allclose(g, metric_at((x1, x2, x3), P), atol=1e-7)


@settings(max_examples=50)
@given(coords, coords, st.floats(-3, 3))
def test_hopf_fibration_commutes(x1, x2, x3):
    q = chart_immersion((x1, x2, x3), P)
    base = inverse_stereo_base(x1, x2, P)
    assert np.allclose(hopf_project(q, P), base, atol=1e-10)


@settings(max_examples=50)
@given(st.floats(0.0, 3.0), st.floats(-1.0, 1.0), st.floats(0, 2 * math.pi))
def test_profile_closed_form(rho, h, theta):
    q = isometric_chart((rho * math.cos(theta), -rho * math.sin(theta), h), P)
    try:
        closed = profile_to_stereo(rho, h, theta, P)
    except PoleError:
        return
    assert np.allclose(stereo_project(chart_immersion(
        (rho * math.cos(theta), rho * math.sin(theta), h), P)).as_array(),
        closed.as_array(), atol=1e-8)
    r_axis, y3 = profile_curve([rho], [h], P)[0]
    assert r_axis == pytest.approx(math.hypot(closed.y1, closed.y2), abs=1e-10)
    assert y3 == pytest.approx(closed.y3, abs=1e-10)
    assert q is not None


def test_point_validation():
    with pytest.raises(ValueError):
        BergerPoint(1.0, 1.0)
    with pytest.raises(PoleError):
        stereo_project(BergerPoint(0.0, 1j))


def test_shanks_geometric():
    # partial sums of a geometric series converge to 1/(1-q)
    q = 0.5
    s = [sum(q**k for k in range(n)) for n in (3, 4, 5)]
    assert shanks(*s) == pytest.approx(2.0)


def test_embeddedness_small_vs_large_c():
    big = embeddedness_check(integrate_canonical(ConstantKe(10.0), P))
    assert big["embedded"]
    assert big["threshold"] == pytest.approx(fiber_period(P))


def test_antipodal_closure():
    rho = np.geomspace(1e-2, 1e6, 4000)
    h = 0.05 * (1 - np.exp(-rho))
    rep = antipodal_closure_check(rho, h, P)
    assert rep["a"] == pytest.approx(0.05, abs=1e-9)
    assert rep["opposite_error"] < 1e-3
