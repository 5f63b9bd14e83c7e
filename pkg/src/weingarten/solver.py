"""Canonical rotational examples of elliptic Weingarten classes.

The profile is integrated from the rotation axis in the ``s`` parameter
(see :mod:`weingarten.curvature`). At each step the Weingarten relation
is solved for ``rho''``; since both mean and extrinsic curvature are
affine in ``rho''`` this is a scalar monotone root problem.

The maximal solution ends in one of four ways: a turning point
(``rho' = 0``) closing up into a sphere by reflection, an entire graph
reaching the edge of the model, an asymptotic vertical cylinder, or a
blowup of the second fundamental form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict, replace

import numpy as np
from scipy.integrate import DOP853, solve_ivp
from scipy.optimize import brentq

from .classes import (ConstantH, GeneralPhi, WeingartenClass, phi_t_derivative,
                      umbilic_constant)
from .curvature import (ProfileState, _radicand, brioschi_curvature, extrinsic_affine,
                        h_prime, mean_curvature_affine, sigma_norm_sq,
                        umbilicity_split)
from .errors import (BoundaryError, ConfigError, DomainError, EvalError,
                     MaxSExceeded, NoRoot)
from .roots import bisect, newton_bisect
from .space import SpaceParams, metric_at

SPHERE = "Sphere"
ENTIRE = "EntireGraph"
CYLINDER = "CylinderAsymptotic"
BLOWUP = "SecondFormBlowup"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SolveConfig:
    """Numerical settings of :func:`integrate_canonical`.

    ``horizon`` bounds the radius for ``kappa >= 0``; ``edge_margin`` is
    the relative distance to the disk edge at which a ``kappa < 0`` graph
    is declared entire; ``max_step`` caps the step so the samples resolve
    the profile.
    """

    s0: float = 1e-4
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_s: float = 1e3
    blowup_threshold: float = 1e8
    cylinder_eps_drho: float = 1e-8
    cylinder_eps_ddrho: float = 1e-8
    cylinder_span: float = 10.0
    axis_threshold: float = 1e-8
    horizon: float = 1e2
    edge_margin: float = 1e-6
    max_step: float = 0.05
    degenerate_tol: float = 1e-12

    def __post_init__(self):
        for k, v in asdict(self).items():
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v) or
                    (k == "max_s" and v == math.inf)):
                raise ConfigError(f"SolveConfig.{k} must be positive and finite, got {v!r}")

    @property
    def cylinder_window(self):
        return (self.cylinder_eps_drho, self.cylinder_eps_ddrho, self.cylinder_span)


class _NegatedPhi(WeingartenClass):
    """``H = -Phi``; used when the umbilic constant of a class is negative."""

    is_h_form = True

    def __init__(self, base):
        self.base = base

    def phi(self, t, v):
        return -self.base.phi(t, v)

    @property
    def depends_on_t(self):
        return self.base.depends_on_t

    def describe(self):
        return {**self.base.describe(), "orientation": "reversed"}


# ---------------------------------------------------------------- rho''

def _weingarten_residual_fn(rho, drho, cls, params):
    a, b = mean_curvature_affine(rho, drho, params)
    k_par, w = umbilicity_split(rho, drho, params)
    v = drho * drho

    def R(p):
        H = a + b * p
        t = (H - k_par) ** 2 + w * w
        return H - cls.phi(t, v)

    def dR(p):
        H = a + b * p
        t = (H - k_par) ** 2 + w * w
        return b - phi_t_derivative(cls, t, v) * 2.0 * (H - k_par) * b

    return R, dR, a, b


def solve_rho_dd(rho: float, drho: float, cls: WeingartenClass, params: SpaceParams,
                 blowup_threshold: float = 1e8) -> float:
    """Second derivative ``rho''`` forced by the Weingarten relation.

    Raises
    ------
    NoRoot
        If no root exists with ``|rho''| <= blowup_threshold`` (or the
        residual is not monotone over the bracket).
    """
    if cls.is_ke_form:
        c, d = extrinsic_affine(rho, params)
        if d == 0.0:
            raise NoRoot(f"extrinsic curvature does not depend on rho'' at rho={rho!r}")
        p = (cls.ke_value(drho * drho) - c) / d
        if not abs(p) <= blowup_threshold:
            raise NoRoot(f"|rho''|={abs(p)!r} exceeds the blowup threshold")
        return p
    if not cls.is_h_form:
        raise TypeError(f"{type(cls).__name__} cannot drive the profile solver")

    R, dR, a, b = _weingarten_residual_fn(rho, drho, cls, params)
    if not cls.depends_on_t:
        p = (cls.phi(0.0, drho * drho) - a) / b
        if not abs(p) <= blowup_threshold:
            raise NoRoot(f"|rho''|={abs(p)!r} exceeds the blowup threshold")
        return p

    # R is strictly decreasing in rho'' for elliptic Phi
    B = 1e3
    while True:
        try:
            r_lo, r_hi = R(-B), R(B)
        except EvalError as exc:
            raise NoRoot(f"Phi not evaluable on bracket [-{B}, {B}]: {exc}") from exc
        if r_lo > 0 > r_hi:
            break
        if r_lo < 0 and r_hi > 0:
            raise NoRoot("residual increases in rho''; relation is not elliptic here")
        if r_lo == 0:
            return -B
        if r_hi == 0:
            return B
        if B >= blowup_threshold:
            raise NoRoot(f"no root with |rho''| <= {blowup_threshold!r} "
                         f"(R(-B)={r_lo!r}, R(B)={r_hi!r})")
        B = min(2 * B, blowup_threshold)
    p0 = (cls.phi(0.0, drho * drho) - a) / b
    try:
        return newton_bisect(R, -B, B, dR, x0=p0, rtol=1e-13, atol=1e-300)
    except EvalError as exc:
        raise NoRoot(str(exc)) from exc


def weingarten_residual(rho, drho, ddrho, cls, params) -> float:
    """``H - Phi(H^2 - Ke, nu^2)`` or ``Ke - Phi(nu^2)``."""
    if cls.is_ke_form:
        c, d = extrinsic_affine(rho, params)
        return c + d * ddrho - cls.ke_value(drho * drho)
    R, _, _, _ = _weingarten_residual_fn(rho, drho, cls, params)
    return R(ddrho)


# ---------------------------------------------------------------- series

def _oriented(cls):
    """Return ``(class, flipped)`` with nonnegative umbilic constant."""
    if cls.is_h_form and umbilic_constant(cls) < 0:
        return _NegatedPhi(cls), True
    return cls, False


def series_coefficient(cls: WeingartenClass, params: SpaceParams, s0: float) -> float:
    """Cubic coefficient ``r3`` of ``rho(s) = s + r3 s^3`` near the axis."""
    tau2 = params.tau**2
    if cls.is_ke_form:
        return -(cls.ke_value(1.0) + tau2) / 6.0

    def resid(r3):
        rho = s0 + r3 * s0**3
        drho = 1.0 + 3.0 * r3 * s0**2
        if _radicand(rho, drho, params) <= 0 or rho <= 0:
            # on this side the profile is flatter than any umbilic start
            return -1.0
        return weingarten_residual(rho, drho, 6.0 * r3 * s0, cls, params)

    lo, hi = -1e6, 1e6
    try:
        if not (resid(lo) > 0 > resid(hi)):
            raise NoRoot("series residual has no sign change on [-1e6, 1e6]")
        return bisect(resid, lo, hi)
    except EvalError as exc:
        raise NoRoot(f"series residual not evaluable: {exc}") from exc


def series_init(cls: WeingartenClass, params: SpaceParams,
                config: SolveConfig = SolveConfig()) -> ProfileState:
    """Profile state at ``s = s0`` from the umbilic series at the axis."""
    cls, _ = _oriented(cls)
    alpha = umbilic_constant(cls)
    s0 = config.s0
    r3 = series_coefficient(cls, params, s0)
    return ProfileState(s0, s0 + r3 * s0**3, 1.0 + 3.0 * r3 * s0**2, 0.5 * alpha * s0 * s0)


# ---------------------------------------------------------------- examples

DENSE_RTOL = 1e-13
DENSE_ATOL = 1e-15
# samples closer to the axis use a graph chart for the Brioschi check
GRAPH_CHART_RADIUS = 2e-2
# right-hand side evaluations allowed at the tight tolerance
DENSE_BUDGET = 40000


class _BudgetExhausted(Exception):
    pass


@dataclass
class CanonicalExample:
    """Sampled maximal rotational solution with its classification.

    Arrays share the sample index. ``lower`` is the number of samples on
    the integrated branch; for spheres the remaining samples are its
    reflection.
    """

    s: np.ndarray
    rho: np.ndarray
    drho: np.ndarray
    h: np.ndarray
    classification: str
    diagnostics: dict
    params: SpaceParams
    cls: WeingartenClass
    config: SolveConfig
    lower: int = 0
    rho_dd: np.ndarray = field(default=None, repr=False)
    H: np.ndarray = field(default=None, repr=False)
    Ke: np.ndarray = field(default=None, repr=False)
    residual: np.ndarray = field(default=None, repr=False)
    flipped: bool = False

    @property
    def nu(self) -> np.ndarray:
        return self.drho

    @property
    def sigma_sq(self) -> np.ndarray:
        return 4.0 * self.H**2 - 2.0 * self.Ke

    @property
    def samples(self) -> list[ProfileState]:
        return [ProfileState(*row) for row in zip(self.s, self.rho, self.drho, self.h)]

    def _rhs(self):
        cls, params, thr = self._solve_cls, self.params, self.config.blowup_threshold

        def f(s, y):
            p = solve_rho_dd(y[0], y[1], cls, params, thr)
            return [y[1], p, h_prime((y[0], y[1]), params)]
        return f

    @property
    def _solve_cls(self):
        return _NegatedPhi(self.cls) if self.flipped else self.cls

    def _dense(self):
        """Single high-accuracy dense solution of the integrated branch.

        Starts from the axis series like the solver, at tighter
        tolerance, and is cached. For spheres the branch is folded at the
        dense solution's own turning point, so the result is smooth
        across the equator.
        """
        cached = self.__dict__.get("_dense_cache")
        if cached is not None:
            return cached
        try:
            cached = self._dense_solve(DENSE_RTOL, DENSE_ATOL, DENSE_BUDGET)
        except _BudgetExhausted:
            # a Phi that is not smooth along the profile (sqrt(t) on an
            # umbilic sphere) leaves noise that the tight tolerance chases
            cached = self._dense_solve(self.config.rel_tol, self.config.abs_tol, None)
        self.__dict__["_dense_cache"] = cached
        return cached

    def _dense_solve(self, rtol, atol, budget):
        n = self.lower
        init = series_init(self.cls, self.params, self.config)
        r3 = (init.rho - init.s) / init.s**3
        alpha = 2.0 * init.h / init.s**2
        y0 = [init.rho, init.drho, init.h]
        opts = dict(method="DOP853", rtol=rtol, atol=atol, dense_output=True,
                    max_step=self.config.max_step, first_step=init.s)
        base = self._rhs()
        calls = [0]

        def rhs(s, y):
            calls[0] += 1
            if budget is not None and calls[0] > budget:
                raise _BudgetExhausted
            return base(s, y)
        sol = None
        if self.classification == SPHERE:
            s_stop = 1.01 * self.s[n - 1]
        else:
            # a little past the last sample so centred stencils fit there
            s_stop = self.s[n - 1]
            edge = self.params.rho_max * (1.0 - 1e-9)

            def hit_edge(s, y):
                return y[0] - edge
            hit_edge.terminal = True
            try:
                sol = solve_ivp(rhs, (init.s, s_stop + 0.01), y0,
                                events=hit_edge if math.isfinite(edge) else None, **opts)
                if not sol.success or sol.t[-1] < s_stop:
                    sol = None
            except (NoRoot, DomainError, EvalError, ValueError):
                sol = None
        if sol is None:
            sol = solve_ivp(rhs, (init.s, s_stop), y0, **opts)
        if not sol.success:
            raise DomainError(f"dense re-integration failed: {sol.message}")
        fold = None
        if self.classification == SPHERE:
            st = self.s[n - 1]
            lo, hi = 0.99 * st, s_stop
            fold = brentq(lambda x: sol.sol(x)[1], lo, hi, xtol=1e-15, rtol=1e-15)
            fold = (fold, float(sol.sol(fold)[2]))
        s_cover = float(self.s[-1]) if fold else float(sol.t[-1])
        return (init.s, r3, alpha, sol.sol, fold, s_cover)

    def state_at(self, s: float) -> ProfileState:
        """Profile state at any ``s`` in ``[0, s_end]``.

        Evaluates the cached dense solution; below the series start the
        axis series is used and spheres are reflected past the equator.
        """
        s0, r3, alpha, f, fold, s_cover = self._dense()
        if not -1e-12 <= s <= s_cover + 1e-12:
            raise DomainError(f"s={s!r} outside [0, {s_cover!r}]")
        mirror = fold is not None and s > fold[0]
        x = 2 * fold[0] - s if mirror else s
        x = max(x, 0.0)
        if x < s0:
            y = (x + r3 * x**3, 1.0 + 3.0 * r3 * x * x, 0.5 * alpha * x * x)
        else:
            y = f(x)
        if mirror:
            return ProfileState(s, y[0], -y[1], 2 * fold[1] - y[2])
        return ProfileState(s, y[0], y[1], y[2])

    def polar_metric(self):
        """Induced metric ``(E, F, G)`` in the chart ``(s, theta)``.

        Tangent vectors come from the dense state, so the coefficients
        carry only the integration error. Degenerate on the axis.
        """
        p = self.params

        def efg(s, th):
            q = self.state_at(s)
            c, sn = math.cos(th), math.sin(th)
            Xs = np.array([q.drho * c, q.drho * sn, h_prime(q, p)])
            Xt = np.array([-q.rho * sn, q.rho * c, 0.0])
            g = metric_at((q.rho * c, q.rho * sn, q.h), p)
            return np.array([Xs @ g @ Xs, Xs @ g @ Xt, Xt @ g @ Xt])
        return efg

    def graph_metric(self, s_ref: float):
        """Induced metric in the chart ``(a, b) -> (a, b, h(sqrt(a^2+b^2)))``.

        Smooth across the axis. The branch of ``h`` is the one through
        ``s_ref``, which must lie where ``drho`` stays away from 0.
        """
        p = self.params
        q0 = self.state_at(s_ref)
        s_last = self._dense()[5]

        def s_of(r):
            s = min(max(s_ref + (r - q0.rho) / q0.drho, 0.0), s_last)
            for _ in range(50):
                q = self.state_at(s)
                ds = (q.rho - r) / q.drho
                s = min(max(s - ds, 0.0), s_last)
                if abs(ds) < 1e-15 * max(1.0, abs(s)):
                    break
            return s

        def efg(a, b):
            r = math.hypot(a, b)
            q = self.state_at(s_of(r))
            if r < 1e-12:
                slope = self._dense()[2] * (1.0 if q0.drho > 0 else -1.0)
            else:
                slope = h_prime(q, p) / q.drho / r
            Xa = np.array([1.0, 0.0, slope * a])
            Xb = np.array([0.0, 1.0, slope * b])
            g = metric_at((a, b, q.h), p)
            return np.array([Xa @ g @ Xa, Xa @ g @ Xb, Xb @ g @ Xb])
        return efg

    def patch(self):
        """Rotational patch ``(s, theta) -> R^3`` of the profile."""
        def X(s, th):
            q = self.state_at(s)
            return np.array([q.rho * math.cos(th), q.rho * math.sin(th), q.h])
        return X

    def intrinsic_curvature(self, i: int, step: float = 4e-3) -> float:
        """Gauss curvature at sample ``i`` from the Brioschi formula.

        The polar chart is used away from the axis and a graph chart near
        it; the outer step shrinks near the edge of the model and the two
        step sizes are combined by Richardson extrapolation.
        """
        s, r = self.s[i], self.rho[i]
        edge = self.params.rho_max - r
        if r < GRAPH_CHART_RADIUS:
            metric, u, v = self.graph_metric(s), r, 0.0
            H = step
        else:
            metric, u, v = self.polar_metric(), s, 0.3
            H = min(step, 0.1 * min(r, edge))
        k1 = brioschi_curvature(None, u, v, self.params, h_outer=H, metric=metric)
        k2 = brioschi_curvature(None, u, v, self.params, h_outer=H / 2, metric=metric)
        return (16.0 * k2 - k1) / 15.0

    def report(self) -> dict:
        return {
            "classification": self.classification,
            "diagnostics": self.diagnostics,
            "params": {"kappa": self.params.kappa, "tau": self.params.tau},
            "class": self.cls.describe(),
            "config": asdict(self.config),
            "samples": int(self.s.size),
        }


def _slice_example(cls, params, config):
    s = np.linspace(0.0, min(config.horizon, config.max_s), 201)
    if params.kappa < 0:
        s = np.linspace(0.0, params.rho_max * (1 - config.edge_margin), 201)
    one = np.ones_like(s)
    ex = CanonicalExample(s, s.copy(), one, np.zeros_like(s), ENTIRE,
                          {"totally_geodesic": True, "turning_s": None,
                           "asymptotic_radius": None, "blowup_rho": None,
                           "total_height": 0.0, "max_sigma_sq": 0.0, "nu_min": 1.0},
                          params, cls, config, lower=s.size)
    ex.rho_dd = np.zeros_like(s)
    ex.H = np.zeros_like(s)
    ex.Ke = np.zeros_like(s)
    ex.residual = np.zeros_like(s)
    return ex


def _fill_curvatures(ex: CanonicalExample):
    cls, params = ex._solve_cls, ex.params
    n = ex.s.size
    ex.rho_dd = np.full(n, np.nan)
    ex.H = np.full(n, np.nan)
    ex.Ke = np.full(n, np.nan)
    ex.residual = np.full(n, np.nan)
    alpha = umbilic_constant(cls)
    for i in range(n):
        r, d = ex.rho[i], ex.drho[i]
        if r <= ex.config.axis_threshold or _radicand(r, d, params) <= 0:
            if r <= ex.config.axis_threshold:
                # umbilical point on the axis
                ex.H[i], ex.Ke[i], ex.residual[i] = alpha, alpha * alpha, 0.0
            continue
        try:
            p = solve_rho_dd(r, d, cls, params, math.inf)
        except (NoRoot, DomainError, EvalError):
            continue
        a, b = mean_curvature_affine(r, d, params)
        c, e = extrinsic_affine(r, params)
        ex.rho_dd[i] = p
        ex.H[i] = a + b * p
        ex.Ke[i] = c + e * p
        ex.residual[i] = abs(weingarten_residual(r, d, p, cls, params))


def integrate_canonical(cls: WeingartenClass, params: SpaceParams,
                        config: SolveConfig = SolveConfig()) -> CanonicalExample:
    """Build and classify the canonical rotational example of ``cls``.

    Raises
    ------
    MaxSExceeded
        When ``max_s`` is reached with no terminal event; the partial
        example is attached as ``exc.partial``.
    """
    base = cls
    cls, flipped = _oriented(cls)
    alpha = umbilic_constant(cls)
    if alpha == 0.0:
        if params.tau == 0.0:
            return _slice_example(base, params, config)
        raise ConfigError("a vanishing umbilic constant with tau != 0 is not supported")

    init = series_init(cls, params, config)
    thr = config.blowup_threshold

    def rhs(s, y):
        p = solve_rho_dd(y[0], y[1], cls, params, thr)
        return np.array([y[1], p, h_prime((y[0], y[1]), params)])

    s_list = [0.0, init.s]
    y_list = [np.array([0.0, 1.0, 0.0]), np.array([init.rho, init.drho, init.h])]
    stepper = DOP853(rhs, init.s, y_list[-1].copy(), t_bound=config.max_s,
                     rtol=config.rel_tol, atol=config.abs_tol, max_step=config.max_step,
                     first_step=init.s)
    diag = {"turning_s": None, "asymptotic_radius": None, "blowup_rho": None,
            "total_height": None, "max_sigma_sq": None, "nu_min": None,
            "s_end": None, "steps": 0}
    label = None
    cyl_start = None
    rho_max = params.rho_max
    while label is None:
        if stepper.status != "running":
            break
        s_prev, y_prev = stepper.t, stepper.y.copy()
        err = None
        for _attempt in range(60):
            try:
                msg = stepper.step()
                err = None
                break
            except (NoRoot, DomainError, EvalError, ValueError) as exc:
                err = exc
                stepper.t, stepper.y = s_prev, y_prev.copy()
                stepper.h_abs *= 0.25
                stepper.status = "running"
                if stepper.h_abs < 1e-14 * max(1.0, abs(s_prev)):
                    break
        if err is not None:
            if isinstance(err, BoundaryError):
                label = ENTIRE
            else:
                label = BLOWUP
                diag["blowup_rho"] = float(y_prev[0])
                diag["blowup_reason"] = str(err)
            break
        if msg is not None and stepper.status == "failed":
            label = BLOWUP
            diag["blowup_rho"] = float(y_prev[0])
            diag["blowup_reason"] = str(msg)
            break
        diag["steps"] += 1
        s_new, y_new = stepper.t, stepper.y.copy()
        # (a) turning point
        if y_new[1] <= 0.0 < y_prev[1]:
            dense = stepper.dense_output()
            st = brentq(lambda x: dense(x)[1], s_prev, s_new, xtol=1e-15, rtol=1e-15)
            yt = dense(st)
            yt[1] = 0.0
            s_list.append(st)
            y_list.append(yt)
            label = SPHERE
            diag["turning_s"] = float(st)
            break
        s_list.append(s_new)
        y_list.append(y_new)
        rho, drho = y_new[0], y_new[1]
        # (d) blowup
        try:
            p = solve_rho_dd(rho, drho, cls, params, thr)
        except (NoRoot, DomainError, EvalError) as exc:
            label = BLOWUP
            diag["blowup_rho"] = float(rho)
            diag["blowup_reason"] = str(exc)
            break
        if rho > 10 * config.s0 and _radicand(rho, drho, params) < config.degenerate_tol:
            label = BLOWUP
            diag["blowup_rho"] = float(rho)
            diag["blowup_reason"] = "angle reached its upper bound 1/sqrt(1+tau^2 rho^2)"
            break
        # (c) cylinder
        if abs(drho) < config.cylinder_eps_drho and abs(p) < config.cylinder_eps_ddrho:
            if cyl_start is None:
                cyl_start = s_new
            elif s_new - cyl_start >= config.cylinder_span:
                label = CYLINDER
                diag["asymptotic_radius"] = float(rho)
                diag["cylinder_window"] = [float(cyl_start), float(s_new)]
                break
        else:
            cyl_start = None
        # (b) entire graph
        if params.kappa < 0 and rho >= rho_max * (1 - config.edge_margin):
            label = ENTIRE
            break
        if params.kappa >= 0 and rho >= config.horizon:
            label = ENTIRE
            break

    s = np.array(s_list)
    Y = np.array(y_list)
    diag["s_end"] = float(s[-1])
    ex = CanonicalExample(s, Y[:, 0], Y[:, 1], Y[:, 2], label or INCONCLUSIVE, diag,
                          params, base, config, lower=s.size, flipped=flipped)
    if label == SPHERE:
        _close_sphere(ex)
    _fill_curvatures(ex)
    sig = ex.sigma_sq
    diag["max_sigma_sq"] = float(np.nanmax(sig)) if np.any(np.isfinite(sig)) else None
    diag["nu_min"] = float(ex.drho.min())
    diag["max_residual"] = float(np.nanmax(ex.residual))
    diag["total_height"] = float(ex.h.max() - ex.h.min())
    if label is None:
        raise MaxSExceeded(f"no terminal event before s = {config.max_s}", partial=ex)
    return ex


def _close_sphere(ex: CanonicalExample):
    """Append the reflection of the integrated half through the turning point."""
    n = ex.s.size
    st, ht = ex.s[-1], ex.h[-1]
    idx = np.arange(n - 2, -1, -1)
    ex.s = np.concatenate((ex.s, 2 * st - ex.s[idx]))
    ex.rho = np.concatenate((ex.rho, ex.rho[idx]))
    ex.drho = np.concatenate((ex.drho, -ex.drho[idx]))
    ex.h = np.concatenate((ex.h, 2 * ht - ex.h[idx]))
    ex.lower = n


def reflection_defect(ex: CanonicalExample, fraction: float = 0.5) -> float:
    """Compare continued integration past the turning point with the reflection.

    Integrates the profile ODE beyond the turning point over ``fraction``
    of the half length and returns the largest deviation in ``rho`` and
    ``h`` from the reflected samples.
    """
    if ex.classification != SPHERE:
        raise ValueError("reflection defect is defined for spheres only")
    n = ex.lower
    st = ex.s[n - 1]
    y0 = [ex.rho[n - 1], 0.0, ex.h[n - 1]]
    s_eval = st + fraction * st * np.linspace(0.05, 1.0, 20)
    sol = solve_ivp(ex._rhs(), (st, s_eval[-1]), y0, method="DOP853",
                    rtol=1e-12, atol=1e-14, t_eval=s_eval)
    worst = 0.0
    for k, s in enumerate(s_eval):
        q = ex.state_at(s)
        worst = max(worst, abs(q.rho - sol.y[0, k]), abs(q.h - sol.y[2, k]))
    return worst


@dataclass
class MonotonicityReport:
    passed: bool
    strictly_decreasing: bool
    surjective: bool | None
    excluded: str | None = None
    first_violation: int | None = None

    def as_dict(self):
        return asdict(self)


def monotonicity_check(example) -> MonotonicityReport:
    """Check that the angle decreases strictly while positive.

    For spheres, also check that the angle covers ``[-1, 1]``.
    """
    nu = np.asarray(example.drho, dtype=float)
    if np.all(np.abs(nu - 1.0) <= 1e-12):
        return MonotonicityReport(False, False, None, excluded="totally geodesic slice")
    upper = nu > 0
    seg = nu[upper] if example.classification != SPHERE else nu
    diffs = np.diff(seg)
    bad = np.nonzero(diffs >= 0)[0]
    strict = bad.size == 0
    surj = None
    if example.classification == SPHERE:
        surj = bool(abs(nu[0] - 1.0) <= 1e-12 and abs(nu[-1] + 1.0) <= 1e-12 and strict)
    passed = strict and (surj is None or surj)
    return MonotonicityReport(bool(passed), bool(strict), surj,
                              first_violation=int(bad[0]) if bad.size else None)
