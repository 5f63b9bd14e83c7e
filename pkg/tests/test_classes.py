import math

import pytest

from weingarten.classes import (ConstantH, ConstantKe, EllipticityGrid, FForm, GeneralPhi,
                                PrescribedH, PrescribedKe, class_from_options,
                                ellipticity_check, eval_phi, normalize, umbilic_constant)
from weingarten.errors import ConfigError, EvalError, NoFixedPoint


@pytest.mark.parametrize("cls, alpha", [
    (ConstantH(0.7), 0.7),
    (PrescribedH("1 + v"), 2.0),
    (GeneralPhi("1 + 0.2*sqrt(t)"), 1.0),
    (ConstantKe(4.0), 2.0),
    (PrescribedKe("2 + 2*v"), 2.0),
    (FForm("1/k2"), 1.0),
])
def test_umbilic_constant(cls, alpha):
    assert umbilic_constant(cls) == pytest.approx(alpha, rel=1e-10)


def test_fform_largest_fixed_point():
    # fixed points of x -> (x^2 + 2)/3 are 1 and 2
    assert umbilic_constant(FForm("(k2^2 + 2)/3")) == pytest.approx(2.0, rel=1e-10)


def test_fform_flip():
    cls = FForm("-1 - k2 + k2 - 1")
    assert umbilic_constant(cls) == pytest.approx(-2.0)
    flipped = normalize(cls)
    assert umbilic_constant(flipped) == pytest.approx(2.0)
    assert flipped.f(-3.0, 0.5) == -cls.f(3.0, 0.5)


def test_fform_without_fixed_point():
    with pytest.raises(NoFixedPoint):
        umbilic_constant(FForm("k2 + 1"))


def test_ellipticity():
    assert ellipticity_check(GeneralPhi("1 + 0.2*sqrt(t)")).passed
    assert ellipticity_check(ConstantH(1.0)).passed
    # Phi = sqrt(t) + 1 makes 4 t Phi_t^2 = 1 everywhere
    report = ellipticity_check(GeneralPhi("1 + sqrt(t)"), EllipticityGrid(n_v=3))
    assert not report.passed
    assert report.worst[2] == pytest.approx(1.0, rel=1e-4)


def test_eval_phi_domain():
    with pytest.raises(EvalError):
        eval_phi(ConstantH(1.0), -1.0, 0.5)
    with pytest.raises(EvalError):
        eval_phi(ConstantH(1.0), 0.0, 1.5)
    with pytest.raises(TypeError):
        eval_phi(ConstantKe(1.0), 0.0, 0.5)


def test_prescribed_ke_positive():
    with pytest.raises(EvalError):
        PrescribedKe("v - 2")
    cls = PrescribedKe("2*v - 0.5")
    with pytest.raises(EvalError):
        cls.ke_value(0.0)


@pytest.mark.parametrize("c", [0.0, -1.0, math.nan])
def test_constant_ke_positive(c):
    with pytest.raises(ConfigError):
        ConstantKe(c)


@pytest.mark.parametrize("kind, kw, expected", [
    ("const-h", {"h0": 0.5}, ConstantH(0.5)),
    ("const-ke", {"c": 2}, ConstantKe(2.0)),
    ("phi", {"phi": "1 + t"}, GeneralPhi("1 + t")),
    ("fform", {"f": "1/k2"}, FForm("1/k2")),
    ("prescribed-h", {"phi": "v"}, PrescribedH("v")),
])
def test_class_from_options(kind, kw, expected):
    assert class_from_options(kind, **kw) == expected


def test_class_from_options_missing():
    with pytest.raises(ConfigError, match="--c"):
        class_from_options("const-ke")
    with pytest.raises(ConfigError):
        class_from_options("nope")


def test_describe_round_trip():
    cls = GeneralPhi("0.8 + 0.3*tanh(t) + 0.1*v")
    d = cls.describe()
    assert class_from_options(d["class"], phi=d["phi"]) == cls
