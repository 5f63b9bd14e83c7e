"""Elliptic Weingarten relations in normal form.

Two families are supported:

* H-forms, ``H = Phi(H^2 - Ke, nu^2)``: :class:`ConstantH`,
  :class:`PrescribedH`, :class:`GeneralPhi`;
* extrinsic-curvature forms, ``Ke = Phi(nu^2) > 0``: :class:`ConstantKe`,
  :class:`PrescribedKe`;

plus :class:`FForm`, the relation ``k1 = f(k2, nu^2)`` used for the
phase-plane analysis in the product ``H^2 x R``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expr as E
from .errors import ConfigError, EvalError, NoFixedPoint


class WeingartenClass:
    """Common interface. Subclasses are immutable."""

    is_h_form = False
    is_ke_form = False

    def phi(self, t: float, v: float) -> float:  # pragma: no cover - overridden
        raise TypeError(f"{type(self).__name__} is not an H-form")

    def ke_value(self, v: float) -> float:  # pragma: no cover - overridden
        raise TypeError(f"{type(self).__name__} is not an extrinsic-curvature form")

    @property
    def depends_on_t(self) -> bool:
        return False

    def describe(self) -> dict:
        raise NotImplementedError


def _compiled(src, variables):
    if isinstance(src, E.Compiled):
        return src
    if isinstance(src, str):
        return E.Compiled(E.parse_expr(src, variables), src)
    return E.Compiled(src)


@dataclass(frozen=True)
class ConstantH(WeingartenClass):
    H0: float
    is_h_form = True

    def phi(self, t, v):
        return float(self.H0)

    def describe(self):
        return {"class": "const-h", "h0": self.H0}


@dataclass(frozen=True)
class PrescribedH(WeingartenClass):
    """Mean curvature prescribed as a function of ``v = nu^2``."""

    expr: E.Compiled
    is_h_form = True

    def __init__(self, expr):
        c = _compiled(expr, ("v",))
        object.__setattr__(self, "expr", c)

    def phi(self, t, v):
        return self.expr(v=v)

    def describe(self):
        return {"class": "prescribed-h", "phi": self.expr.source}


@dataclass(frozen=True)
class GeneralPhi(WeingartenClass):
    """``H = Phi(t, v)`` with ``t = H^2 - Ke`` and ``v = nu^2``."""

    expr: E.Compiled
    is_h_form = True

    def __init__(self, expr):
        c = _compiled(expr, E.PHI_VARS)
        object.__setattr__(self, "expr", c)

    def phi(self, t, v):
        return self.expr(t=t, v=v)

    @property
    def depends_on_t(self):
        return "t" in E.free_variables(self.expr.node)

    def describe(self):
        return {"class": "phi", "phi": self.expr.source}


@dataclass(frozen=True)
class ConstantKe(WeingartenClass):
    c: float
    is_ke_form = True

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise ConfigError(f"constant extrinsic curvature must be > 0, got {self.c!r}")

    def ke_value(self, v):
        return float(self.c)

    def describe(self):
        return {"class": "const-ke", "c": self.c}


@dataclass(frozen=True)
class PrescribedKe(WeingartenClass):
    """``Ke = Phi(v)``; positivity is checked at evaluation time."""

    expr: E.Compiled
    is_ke_form = True

    def __init__(self, expr):
        c = _compiled(expr, ("v",))
        object.__setattr__(self, "expr", c)
        self.ke_value(1.0)

    def ke_value(self, v):
        val = self.expr(v=v)
        if val <= 0:
            raise EvalError(f"prescribed extrinsic curvature must be positive, got {val!r} at v={v!r}")
        return val

    def describe(self):
        return {"class": "prescribed-ke", "phi": self.expr.source}


@dataclass(frozen=True)
class FForm(WeingartenClass):
    """``k1 = f(k2, v)``, defined wherever the expression evaluates."""

    expr: E.Compiled

    def __init__(self, expr):
        c = _compiled(expr, E.F_VARS)
        object.__setattr__(self, "expr", c)

    def f(self, k2: float, v: float) -> float:
        return self.expr(k2=k2, v=v)

    def flipped(self) -> "FForm":
        """The relation ``k1 = -f(-k2, v)`` (reversed orientation)."""
        node = E.substitute(self.expr.node, "k2", E.Neg(E.Var("k2")))
        return FForm(E.Compiled(E.Neg(node)))

    def describe(self):
        return {"class": "fform", "f": self.expr.source}


def eval_phi(cls: WeingartenClass, t: float, v: float) -> float:
    """Evaluate ``Phi(t, v)`` of an H-form."""
    if not cls.is_h_form:
        raise TypeError(f"{type(cls).__name__} is not an H-form")
    if t < 0 or not 0.0 <= v <= 1.0:
        raise EvalError(f"(t, v) = ({t!r}, {v!r}) outside t >= 0, 0 <= v <= 1")
    return cls.phi(t, v)


@dataclass(frozen=True)
class EllipticityGrid:
    t_max: float = 1e4
    n_t: int = 60
    n_v: int = 11
    t_min: float = 1e-4
    margin: float = 1e-9

    def nodes(self):
        ts = np.concatenate(([0.0], np.geomspace(self.t_min, self.t_max, self.n_t)))
        vs = np.linspace(0.0, 1.0, self.n_v)
        return ts, vs


@dataclass
class EllipticityReport:
    passed: bool
    worst: tuple
    values: np.ndarray = field(repr=False)

    def as_dict(self):
        return {"pass": self.passed, "worst": {"t": self.worst[0], "v": self.worst[1],
                                               "value": self.worst[2]}}


def phi_t_derivative(cls: WeingartenClass, t: float, v: float) -> float:
    """Central difference of ``Phi`` in ``t``, step ``max(1e-6, 1e-6 t)``."""
    if not cls.depends_on_t:
        return 0.0
    h = max(1e-6, 1e-6 * t)
    if t - h < 0:
        return (cls.phi(t + h, v) - cls.phi(t, v)) / h
    return (cls.phi(t + h, v) - cls.phi(t - h, v)) / (2 * h)


def ellipticity_check(cls: WeingartenClass, grid: EllipticityGrid | None = None) -> EllipticityReport:
    """Sample ``4 t (dPhi/dt)^2`` on a grid and compare against 1."""
    if not cls.is_h_form:
        raise TypeError("ellipticity check applies to H-forms")
    grid = grid or EllipticityGrid()
    ts, vs = grid.nodes()
    vals = np.zeros((ts.size, vs.size))
    for i, t in enumerate(ts):
        if t == 0.0:
            continue
        for j, v in enumerate(vs):
            d = phi_t_derivative(cls, t, v)
            vals[i, j] = 4.0 * t * d * d
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    worst = (float(ts[i]), float(vs[j]), float(vals[i, j]))
    return EllipticityReport(bool(vals.max() < 1.0 - grid.margin), worst, vals)


def _fixed_points(g, lo=-1e6, hi=1e6, n=4001):
    """All sign changes of ``g`` on a symmetric-log grid, refined by bisection."""
    half = np.geomspace(1e-8, hi, (n - 1) // 2)
    xs = np.concatenate((-half[::-1], [0.0], half))
    xs = xs[(xs >= lo) & (xs <= hi)]
    vals = []
    for x in xs:
        try:
            vals.append(g(float(x)))
        except EvalError:
            vals.append(math.nan)
    roots = []
    for k in range(len(xs) - 1):
        a, b, ga, gb = float(xs[k]), float(xs[k + 1]), vals[k], vals[k + 1]
        if math.isnan(ga) or math.isnan(gb):
            continue
        if ga == 0.0:
            roots.append(a)
            continue
        if ga * gb > 0:
            continue
        for _ in range(200):
            m = 0.5 * (a + b)
            if m == a or m == b:
                break
            try:
                gm = g(m)
            except EvalError:
                break
            if gm == 0.0:
                a = b = m
                break
            if (gm < 0) == (ga < 0):
                a, ga = m, gm
            else:
                b = m
        x = 0.5 * (a + b)
        try:
            gx = g(x)
        except EvalError:
            continue
        # reject poles, where the sign change is not a zero
        if abs(gx) <= 1e-8 * max(1.0, abs(x)):
            roots.append(x)
    return sorted(set(roots))


def umbilic_constant(cls: WeingartenClass) -> float:
    """Common value of the principal curvatures at an umbilical point.

    For :class:`FForm` the largest fixed point of ``x -> f(x, 1)`` is
    returned; a negative fixed point signals that the class should be
    replaced by :meth:`FForm.flipped`, whose constant is ``-alpha``.
    """
    if isinstance(cls, ConstantH):
        return float(cls.H0)
    if cls.is_h_form:
        return cls.phi(0.0, 1.0)
    if isinstance(cls, ConstantKe):
        return math.sqrt(cls.c)
    if cls.is_ke_form:
        return math.sqrt(cls.ke_value(1.0))
    if isinstance(cls, FForm):
        roots = _fixed_points(lambda x: cls.f(x, 1.0) - x)
        if not roots:
            raise NoFixedPoint(f"f(x, 1) = x has no solution in [-1e6, 1e6] for {cls.expr.source!r}")
        return roots[-1]
    raise TypeError(f"unsupported class {cls!r}")


def normalize(cls: WeingartenClass) -> WeingartenClass:
    """Flip an FForm whose umbilic constant is negative."""
    if isinstance(cls, FForm) and umbilic_constant(cls) < 0:
        return cls.flipped()
    return cls


def class_from_options(kind: str, h0=None, c=None, phi=None, f=None) -> WeingartenClass:
    """Build a class from CLI-style options."""
    def need(name, val):
        if val is None:
            raise ConfigError(f"class {kind!r} requires --{name}")
        return val

    if kind == "const-h":
        return ConstantH(float(need("h0", h0)))
    if kind == "prescribed-h":
        return PrescribedH(need("phi", phi))
    if kind == "const-ke":
        return ConstantKe(float(need("c", c)))
    if kind == "prescribed-ke":
        return PrescribedKe(need("phi", phi))
    if kind == "phi":
        return GeneralPhi(need("phi", phi))
    if kind == "fform":
        return FForm(need("f", f))
    raise ConfigError(f"unknown class {kind!r}")
