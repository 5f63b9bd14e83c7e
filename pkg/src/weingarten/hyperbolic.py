"""Phase-plane analysis of rotational Weingarten surfaces in H^2 x R.

The profile ``(r(s), h(s))`` is parametrised by arclength, ``r`` being the
geodesic distance to the axis. Writing ``y = r' = cos(phi)`` the principal
curvatures are ``k1 = phi'`` and ``k2 = sin(phi) coth(r)``, so a relation
``k1 = f(k2, y^2)`` becomes the autonomous system

    r' = cos(phi),   phi' = f(sin(phi) coth(r), cos(phi)^2),   h' = sin(phi).

The angle form is numerically better conditioned near the axis than the
``(x, y)`` form, where ``sqrt(1 - y^2)`` loses half the digits.

Also contains the construction of a Weingarten class whose canonical
example has unbounded second fundamental form, and a polynomial example
in S^2 x R.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import DOP853, OdeSolution
from scipy.optimize import brentq

from . import expr as E
from .classes import FForm, umbilic_constant
from .errors import ConstructionError, DomainError, EvalError, MaxSExceeded, SingularAxis
from .solver import BLOWUP, ENTIRE, INCONCLUSIVE, SPHERE


@dataclass(frozen=True)
class HyperState:
    s: float
    r: float
    y: float
    h: float


@dataclass(frozen=True)
class OrbitConfig:
    s0: float = 1e-4
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_s: float = 1e3
    max_step: float = 0.05
    blowup_threshold: float = 1e8
    horizon: float = 30.0
    stop_below_y: float | None = None


def h2r_principal_curvatures(state: HyperState, ddr: float) -> tuple[float, float]:
    """Principal curvatures from ``r'' = y'`` on the branch ``h' >= 0``."""
    if state.r <= 1e-8:
        raise SingularAxis("r is within the axis threshold")
    y = state.y
    hp = math.sqrt(max(1.0 - y * y, 0.0))
    if hp == 0.0:
        raise DomainError("horizontal tangent: h' = 0")
    hpp = -y * ddr / hp
    k1 = y * hpp - ddr * hp
    k2 = hp / math.tanh(state.r)
    return k1, k2


@dataclass
class HyperOrbit:
    s: np.ndarray
    r: np.ndarray
    phi: np.ndarray
    h: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    classification: str
    diagnostics: dict
    dense: OdeSolution | None = field(default=None, repr=False)

    @property
    def y(self) -> np.ndarray:
        return np.cos(self.phi)

    @property
    def sigma_sq(self) -> np.ndarray:
        return self.k1**2 + self.k2**2

    def y_at_radius(self, r: float) -> float:
        """Angle ``y`` where the orbit first reaches geodesic radius ``r``."""
        n = self.diagnostics.get("integrated", self.s.size)
        i = int(np.searchsorted(self.r[:n], r))
        if i == 0 or i >= n:
            raise DomainError(f"radius {r!r} not reached on the monotone branch")
        a, b = self.s[i - 1], self.s[i]
        st = brentq(lambda x: self.dense(x)[0] - r, a, b, xtol=1e-15, rtol=1e-15)
        return math.cos(self.dense(st)[1])


def h2r_orbit(fform, config: OrbitConfig = OrbitConfig()) -> HyperOrbit:
    """Integrate the profile of the canonical example of ``k1 = f(k2, v)``.

    Parameters
    ----------
    fform : FForm or callable
        The relation; a callable must accept ``(k2, v)``.
    config : OrbitConfig

    Raises
    ------
    MaxSExceeded
        If neither a turning point, a blowup nor the horizon ``r >= horizon``
        is met before ``max_s``.
    """
    f = fform.f if isinstance(fform, FForm) else fform
    alpha = umbilic_constant(fform) if isinstance(fform, FForm) else fform.alpha
    thr = config.blowup_threshold

    def rhs(s, z):
        x, ph = z[0], z[1]
        if x <= 0:
            raise DomainError("orbit reached the axis")
        sp = math.sin(ph)
        k1 = f(sp / math.tanh(x), math.cos(ph) ** 2)
        if not abs(k1) <= thr:
            raise EvalError(f"k1 = {k1!r} exceeds the blowup threshold")
        return np.array([math.cos(ph), k1, sp])

    s0 = config.s0
    z0 = np.array([s0 - alpha * alpha * s0**3 / 6.0, alpha * s0, 0.5 * alpha * s0 * s0])
    stepper = DOP853(rhs, s0, z0, t_bound=config.max_s, rtol=config.rel_tol,
                     atol=config.abs_tol, max_step=config.max_step)
    ts, zs, interps = [0.0, s0], [np.array([0.0, 0.0, 0.0]), z0], []
    diag = {"alpha": alpha, "turning_s": None, "blowup": None}
    label = None
    while stepper.status == "running":
        s_prev, z_prev = stepper.t, stepper.y.copy()
        err = None
        for _ in range(60):
            try:
                msg = stepper.step()
                err = None
                break
            except (EvalError, DomainError, ValueError, ZeroDivisionError) as exc:
                err = exc
                stepper.t, stepper.y = s_prev, z_prev.copy()
                stepper.status = "running"
                stepper.h_abs *= 0.25
                if stepper.h_abs < 1e-14:
                    break
        if err is not None or stepper.status == "failed":
            label = BLOWUP
            diag["blowup"] = {"s": float(s_prev), "x": float(z_prev[0]),
                              "y": float(math.cos(z_prev[1])),
                              "reason": str(err if err is not None else msg)}
            break
        s_new, z_new = stepper.t, stepper.y.copy()
        dense = stepper.dense_output()
        if z_new[1] >= math.pi / 2 > z_prev[1]:
            st = brentq(lambda x: dense(x)[1] - math.pi / 2, s_prev, s_new,
                        xtol=1e-15, rtol=1e-15)
            zt = dense(st)
            zt[1] = math.pi / 2
            ts.append(st)
            zs.append(zt)
            interps.append(dense)
            label = SPHERE
            diag["turning_s"] = float(st)
            break
        ts.append(s_new)
        zs.append(z_new)
        interps.append(dense)
        if config.stop_below_y is not None and math.cos(z_new[1]) < config.stop_below_y:
            label = INCONCLUSIVE
            diag["stopped_below_y"] = config.stop_below_y
            break
        if z_new[0] >= config.horizon:
            label = ENTIRE
            break

    s = np.array(ts)
    Z = np.array(zs)
    n = s.size
    k1 = np.full(n, np.nan)
    k2 = np.full(n, np.nan)
    k1[0] = k2[0] = alpha
    for i in range(1, n):
        x, ph = Z[i, 0], Z[i, 1]
        k2[i] = math.sin(ph) / math.tanh(x)
        try:
            k1[i] = f(k2[i], math.cos(ph) ** 2)
        except EvalError:
            pass
    dense = OdeSolution(np.array(ts[1:]), interps) if interps else None
    orbit = HyperOrbit(s, Z[:, 0], Z[:, 1], Z[:, 2], k1, k2, label or INCONCLUSIVE, diag, dense)
    diag["integrated"] = n
    diag["max_sigma_sq"] = float(np.nanmax(orbit.sigma_sq))
    diag["y_min"] = float(np.cos(Z[:, 1]).min())
    diag["s_end"] = float(s[-1])
    if label is None:
        raise MaxSExceeded(f"no terminal event before s = {config.max_s}", partial=orbit)
    return orbit


# ---------------------------------------------------------------- barriers

def barrier_curve(a: float):
    """``y -> artanh(sqrt(1 - y^2)/a)``; infinite where the argument reaches 1."""
    if not a > 0:
        raise DomainError("barrier parameter must be positive")

    def gamma(y):
        arg = math.sqrt(max(1.0 - y * y, 0.0)) / a
        if arg >= 1.0:
            raise DomainError(f"artanh argument {arg!r} >= 1 at y={y!r}")
        return math.atanh(arg)
    return gamma


def barrier_curves(a: float, alpha0: float, alpha: float | None = None):
    """Barrier curves ``Gamma`` (parameter ``a``) and ``Gamma_0`` (``alpha0``)."""
    if not 0 < a < alpha0:
        raise DomainError("need 0 < a < alpha0")
    if alpha is not None and not alpha0 < alpha:
        raise DomainError("need alpha0 < alpha")
    return barrier_curve(a), barrier_curve(alpha0)


def barrier_vertex_curvature(alpha0: float, step: float = 1e-4) -> float:
    """Curvature of ``Gamma_0`` at ``(0, 1)`` by central differences.

    Near the vertex the curve is the graph ``y = sqrt(1 - alpha0^2 tanh(x)^2)``.
    """
    y = lambda x: math.sqrt(1.0 - (alpha0 * math.tanh(x)) ** 2)
    ypp = (y(step) - 2.0 * y(0.0) + y(-step)) / step**2
    yp = (y(step) - y(-step)) / (2.0 * step)
    return abs(ypp) / (1.0 + yp * yp) ** 1.5


def orbit_stays_left(orbit: HyperOrbit, gamma0) -> bool:
    """True if every sample satisfies ``x < Gamma_0(y)`` (where defined)."""
    for x, y in zip(orbit.r[1:], orbit.y[1:]):
        try:
            g = gamma0(y)
        except DomainError:
            continue
        if not x < g:
            return False
    return True


# ---------------------------------------------------------------- blowup counterexample

def _compile_v(src_or_node):
    if isinstance(src_or_node, str):
        return E.parse_expr(src_or_node, ("v",))
    if isinstance(src_or_node, E.Compiled):
        return src_or_node.node
    if isinstance(src_or_node, (int, float)):
        return E.Num(float(src_or_node))
    return src_or_node


def product_fform(phi_node) -> FForm:
    """``k1 = phi(v) + 1/(k2 - phi(v))``, from ``(k1-phi)(k2-phi) = 1``."""
    k2 = E.Var("k2")
    return FForm(E.Compiled(E.BinOp("+", phi_node,
                                    E.BinOp("/", E.Num(1.0), E.BinOp("-", k2, phi_node)))))


def _smoothstep_blend(V: float, B: float):
    """Tree for ``B (1 - S(clamp((v - V/8)/(7V/8))))`` with ``S = 3w^2 - 2w^3``."""
    v = E.Var("v")
    w = E.BinOp("/", E.BinOp("-", v, E.Num(V / 8.0)), E.Num(7.0 * V / 8.0))
    # clamp(w, 0, 1) = (|w| - |w - 1| + 1)/2
    c = E.BinOp("/", E.BinOp("+", E.BinOp("-", E.Call("abs", w),
                                          E.Call("abs", E.BinOp("-", w, E.Num(1.0)))),
                             E.Num(1.0)), E.Num(2.0))
    S = E.BinOp("-", E.BinOp("*", E.Num(3.0), E.BinOp("^", c, E.Num(2.0))),
                E.BinOp("*", E.Num(2.0), E.BinOp("^", c, E.Num(3.0))))
    return E.BinOp("*", E.Num(B), E.BinOp("-", E.Num(1.0), S))


@dataclass
class Popu0Result:
    fform: FForm
    base: FForm
    x_eps: float
    y_eps: float
    target: float
    bump: float
    blend_interval: tuple
    orbit: HyperOrbit
    x_star: float
    y_star: float

    @property
    def certificate_ok(self) -> bool:
        return (self.orbit.classification == BLOWUP
                and self.y_eps / 2 < self.y_star < self.y_eps)

    def as_dict(self):
        return {"phi": self.fform.expr.source, "x_eps": self.x_eps, "y_eps": self.y_eps,
                "target": self.target, "bump": self.bump,
                "blend_interval": list(self.blend_interval),
                "x_star": self.x_star, "y_star": self.y_star,
                "classification": self.orbit.classification,
                "certificate": self.certificate_ok}


def blowup_counterexample(phi0, eps: float, margin: float = 0.25,
                config: OrbitConfig = OrbitConfig()) -> Popu0Result:
    """Raise ``phi0`` below ``v = y_eps^2`` so the canonical example blows up.

    The base relation is ``(k1 - phi0(v))(k2 - phi0(v)) = 1``. After
    integrating its canonical orbit up to ``s = eps`` (giving
    ``(x_eps, y_eps)``), ``phi`` is set to ``phi0`` on ``[y_eps^2, 1]``
    and raised by a smoothstep bump below, so that at ``v = y_eps^2/4``

        phi > sqrt(1 - y_eps^2/4) coth(x_eps),

    which forces the orbit onto the singular curve
    ``phi(y^2) = sqrt(1 - y^2) coth x`` before ``y`` drops to ``y_eps/2``.

    Raises
    ------
    ConstructionError
        If ``phi0`` violates ``phi0(v) > sqrt(1 - v)`` on the sample grid,
        the base orbit does not reach ``s = eps``, or the bump cannot be
        built.
    """
    node0 = _compile_v(phi0)
    phi0_c = E.Compiled(node0)
    for v in np.linspace(0.0, 1.0, 1001):
        val = phi0_c(v=float(v))
        if not val > math.sqrt(1.0 - v):
            raise ConstructionError(f"phi0({v:.4g}) = {val!r} is not above sqrt(1 - v)")
    base = product_fform(node0)
    try:
        orb = h2r_orbit(base, OrbitConfig(**{**config.__dict__, "max_s": eps}))
    except MaxSExceeded as exc:
        orb = exc.partial
    if orb.classification not in (INCONCLUSIVE,) or abs(orb.s[-1] - eps) > 1e-9:
        raise ConstructionError(f"base orbit ended ({orb.classification}) before s = eps")
    x_eps, y_eps = float(orb.r[-1]), float(orb.y[-1])
    if not (0.0 < y_eps < 1.0 and x_eps > 0.0):
        raise ConstructionError("degenerate base orbit at s = eps")
    V = y_eps**2
    target = math.sqrt(1.0 - V / 4.0) / math.tanh(x_eps)
    w = (V / 4.0 - V / 8.0) / (7.0 * V / 8.0)
    reach = 1.0 - (3 * w * w - 2 * w**3)
    gap = target - phi0_c(v=V / 4.0)
    B = max(gap, 0.0) * (1.0 + margin) / reach + margin * target
    if not (math.isfinite(B) and B > 0):
        raise ConstructionError("cannot size the bump")
    phi_node = E.BinOp("+", node0, _smoothstep_blend(V, B))
    fform = product_fform(phi_node)
    phi_c = E.Compiled(phi_node)
    if not phi_c(v=V / 4.0) > target:
        raise ConstructionError("blend does not exceed the target value")
    run = h2r_orbit(fform, OrbitConfig(**{**config.__dict__, "stop_below_y": y_eps / 2}))
    b = run.diagnostics.get("blowup") or {}
    return Popu0Result(fform, base, x_eps, y_eps, target, B, (V / 8.0, V), run,
                       b.get("x", math.nan), b.get("y", math.nan))


# name used by the verification suite and the public API
popu0_class = blowup_counterexample


# ---------------------------------------------------------------- S^2 x R

@dataclass
class S2RReport:
    R: float
    delta: float
    conditions: dict
    limit_estimate: float
    rho: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)
    k1: np.ndarray = field(repr=False)
    k2: np.ndarray = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def as_dict(self):
        return {"R": self.R, "delta": self.delta, "conditions": self.conditions,
                "limit_estimate": self.limit_estimate, "pass": self.passed}


def s2r_delta(R: float) -> float:
    """The ``delta`` making the curvature-derivative ratio tend to -1 at the axis."""
    return -R + (R / 6.0 + R**3) ** (1.0 / 3.0)


def s2r_example(R: float, delta: float, n: int = 20001, tol: float = 1e-3) -> S2RReport:
    """Check the even quartic profile ``h = R rho^2/2 + (R+delta)^3 rho^4/8``."""
    A = (R + delta) ** 3

    def derivs(rho):
        h = 0.5 * R * rho**2 + A * rho**4 / 8.0
        h1 = R * rho + 0.5 * A * rho**3
        h2 = R + 1.5 * A * rho**2
        h3 = 3.0 * A * rho
        return h, h1, h2, h3

    def curv(rho):
        _, h1, h2, h3 = derivs(rho)
        w = 1.0 + h1 * h1
        cot = np.cos(rho) / np.sin(rho)
        k1 = h2 / w**1.5
        k2 = h1 * cot / np.sqrt(w)
        dk1 = h3 / w**1.5 - 3.0 * h1 * h2 * h2 / w**2.5
        dk2 = (h2 * cot - h1 / np.sin(rho) ** 2) / np.sqrt(w) - h1 * h1 * h2 * cot / w**1.5
        return k1, k2, dk1, dk2

    rho = np.linspace(0.0, math.pi, n)[1:-1]
    h, _, h2, _ = derivs(rho)
    k1, k2, dk1, dk2 = curv(rho)
    h0, h10, h20, _ = derivs(0.0)
    ratios = []
    pts = (1e-2, 1e-3, 1e-4)
    for p in pts:
        _, _, a, b = curv(np.array(p))
        ratios.append(float(a / b))
    # the ratio is even in rho: error ~ c rho^2, removed twice
    r1 = [(100.0 * ratios[i + 1] - ratios[i]) / 99.0 for i in range(2)]
    limit = (100.0 * r1[1] - r1[0]) / 99.0
    conditions = {
        "axis_tangency": bool(h0 == 0.0 and h10 == 0.0 and h20 > 0.0),
        "convex": bool(np.all(h2 > 0.0)),
        "opposite_monotonicity": bool(np.all(dk1 * dk2 < 0.0)),
        "ratio_limit": bool(abs(limit + 1.0) < tol),
    }
    return S2RReport(R, delta, conditions, limit, rho, h, k1, k2)
