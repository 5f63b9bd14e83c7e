import pytest

from weingarten import suites
from weingarten.classes import EllipticityGrid, ellipticity_check


def test_registry_complete():
    assert set(suites.RUNNERS) == set(suites.SUITES)
    with pytest.raises(Exception):
        suites.run_suite("nope")


def test_random_phis_reproducible_and_elliptic():
    a = suites.random_bounded_phis(4)
    b = suites.random_bounded_phis(4)
    assert a == b and len(a) == 4
    for cls in a:
        assert ellipticity_check(cls, EllipticityGrid(n_v=2)).passed


def test_height_sweep_crosses_fiber_period():
    rows = suites.height_sweep([0.5, 10.0])
    assert [r["embedded"] for r in rows] == [False, True]


@pytest.mark.parametrize("name", ["cones", "ke-closed-form", "s2r-example", "popu0"])
def test_fast_suites_pass(name):
    assert suites.run_suite(name)["passed"]
