"""Verification suites shared by the CLI and the acceptance tests.

Every suite returns ``{"suite": name, "passed": bool, "checks": [...]}``
where each check records its measured value next to the tolerance it
was held to.
"""
from __future__ import annotations

import math
import time

import numpy as np

from . import berger as B
from .classes import (ConstantH, ConstantKe, FForm, GeneralPhi, EllipticityGrid,
                      ellipticity_check)
from .closed_forms import (ConeSpec, cone_height, cone_heights, cone_rho_limit, cone_slope,
                           ke_angle, ke_x0)
from .curvature import (brioschi_curvature, fd_shape_operator_oracle, graph_curvatures_u,
                        rotational_graph_metric, rotational_patch)
from .errors import MaxSExceeded, WeingartenError
from .hyperbolic import OrbitConfig, h2r_orbit, blowup_counterexample, s2r_delta, s2r_example
from .solver import (BLOWUP, SPHERE, SolveConfig, integrate_canonical, monotonicity_check,
                     reflection_defect)
from .space import SpaceParams, gauss_K, metric_at

SUITES = ("gauss", "cones", "ke-closed-form", "monotonicity", "h2r-bound", "popu0",
          "s2r-example", "berger")

KE_TUPLES = ((0.0, 1.0, 1.0), (-1.0, 0.0, 1.0), (4.0, 0.0, 1.0), (4.0, 0.1, 1.0))
CONE_TUPLES = ((0.0, 1.0, 0.5), (-1.0, 0.0, 0.7), (4.0, 0.1, 0.3))

# canonical examples every invariant suite runs on: (label, class, kappa, tau)
SHIPPED = (
    ("Ke=1 Nil3", lambda: ConstantKe(1.0), 0.0, 1.0),
    ("Ke=1 H2xR", lambda: ConstantKe(1.0), -1.0, 0.0),
    ("Ke=1 S2xR", lambda: ConstantKe(1.0), 4.0, 0.0),
    ("Ke=1 Berger", lambda: ConstantKe(1.0), 4.0, 0.1),
    ("Ke=1 S3", lambda: ConstantKe(1.0), 4.0, 1.0),
    ("Ke=2 PSL", lambda: ConstantKe(2.0), -1.0, 0.5),
    ("H=1 R3", lambda: ConstantH(1.0), 0.0, 0.0),
    ("Ke=1 R3", lambda: ConstantKe(1.0), 0.0, 0.0),
    ("H=0.6 H2xR", lambda: ConstantH(0.6), -1.0, 0.0),
    ("H=0.4 H2xR", lambda: ConstantH(0.4), -1.0, 0.0),
    ("phi Berger", lambda: GeneralPhi("1 + 0.2*sqrt(t)"), 4.0, 0.1),
    ("phi Nil3", lambda: GeneralPhi("0.8 + 0.3*tanh(t) + 0.1*v"), 0.0, 1.0),
)


def _check(name, passed, value=None, tol=None, **extra):
    out = {"name": name, "passed": bool(passed)}
    if value is not None:
        out["value"] = value
    if tol is not None:
        out["tol"] = tol
    out.update(extra)
    return out


def _result(name, checks):
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}


_CACHE: dict = {}


def shipped_example(label: str):
    """Canonical example of the shipped surface ``label`` (memoised)."""
    if label not in _CACHE:
        _, make, k, t = next(row for row in SHIPPED if row[0] == label)
        _CACHE[label] = integrate_canonical(make(), SpaceParams(k, t))
    return _CACHE[label]


# ---------------------------------------------------------------- gauss

def gauss_defect(example) -> tuple[float, int]:
    """Largest Gauss-identity defect over all samples and where it occurs."""
    p = example.params
    worst, at = 0.0, -1
    for i in range(example.s.size):
        k = example.intrinsic_curvature(i)
        e = abs(k - gauss_K(example.Ke[i], example.drho[i], p))
        if not e <= worst:
            worst, at = e, i
    return worst, at


def cone_gauss_defect(kappa, tau, beta, n: int = 12) -> float:
    p = SpaceParams(kappa, tau)
    spec = ConeSpec(beta)
    lim = min(cone_rho_limit(spec, p), 10.0)
    metric = rotational_graph_metric(lambda r: cone_height(r, spec, p),
                                     lambda r: float(cone_slope(r, spec, p)), p)
    worst = 0.0
    for r in np.linspace(0.1, 0.9, n) * lim:
        H = min(4e-3, 0.05 * min(r, lim - r))
        k1 = brioschi_curvature(None, r, 0.3, p, h_outer=H, metric=metric)
        k2 = brioschi_curvature(None, r, 0.3, p, h_outer=H / 2, metric=metric)
        k = (16.0 * k2 - k1) / 15.0
        worst = max(worst, abs(k - gauss_K(-tau * tau, beta, p)))
    return worst


def suite_gauss(tol: float = 1e-5):
    checks = []
    for label, *_ in SHIPPED:
        ex = shipped_example(label)
        worst, at = gauss_defect(ex)
        checks.append(_check(f"gauss {label}", worst < tol, worst, tol,
                             samples=int(ex.s.size), worst_s=float(ex.s[at])))
    for k, t, b in CONE_TUPLES:
        worst = cone_gauss_defect(k, t, b)
        checks.append(_check(f"gauss cone kappa={k} tau={t} beta={b}", worst < tol, worst, tol))
    return _result("gauss", checks)


# ---------------------------------------------------------------- cones

def cone_samples(kappa, tau, beta, n: int = 801):
    """Uniform radial samples of a cone, avoiding the axis and domain edge."""
    p = SpaceParams(kappa, tau)
    spec = ConeSpec(beta)
    lim = min(cone_rho_limit(spec, p), 10.0)
    rho = np.linspace(0.05 * lim, 0.9 * lim, n)
    return p, spec, rho, cone_heights(rho, spec, p)


def suite_cones(nu_tol: float = 1e-8, ke_tol: float = 1e-6):
    checks = []
    for k, t, b in CONE_TUPLES:
        p, spec, rho, h = cone_samples(k, t, b)
        nu, H, Ke = graph_curvatures_u(rho, rho, h, p)
        tag = f"kappa={k} tau={t} beta={b}"
        e_nu = float(np.max(np.abs(np.abs(nu) - abs(b))))
        checks.append(_check(f"cone nu {tag}", e_nu < nu_tol, e_nu, nu_tol))
        e_ke = float(np.max(np.abs(Ke + t * t)))
        checks.append(_check(f"cone Ke graph formula {tag}", e_ke < ke_tol, e_ke, ke_tol))
        X = rotational_patch(lambda r: r, lambda r: cone_height(r, spec, p))
        e_fd = 0.0
        for r in np.linspace(rho[10], rho[-10], 7):
            _, ke, _ = fd_shape_operator_oracle(X, r, 0.3, p, h_fd=1e-2)
            e_fd = max(e_fd, abs(ke + t * t))
        checks.append(_check(f"cone Ke oracle {tag}", e_fd < ke_tol, e_fd, ke_tol))
        dH = np.diff(H)
        mono = bool(np.all(dH < 0) or np.all(dH > 0))
        checks.append(_check(f"cone H strictly monotone {tag}", mono,
                             direction="decreasing" if dH[0] < 0 else "increasing"))
    return _result("cones", checks)


# ---------------------------------------------------------------- Ke = c

def ke_oracle_error(kappa, tau, c, fraction: float = 0.95):
    """Sup-norm gap between integrated and closed-form angle on ``[0, fraction x0]``."""
    p = SpaceParams(kappa, tau)
    t0 = time.perf_counter()
    ex = integrate_canonical(ConstantKe(c), p)
    elapsed = time.perf_counter() - t0
    x0 = ke_x0(c, p)
    n = ex.lower
    mask = ex.rho[:n] <= fraction * x0
    err = max(abs(ex.drho[i] - ke_angle(ex.rho[i], c, p)) for i in np.nonzero(mask)[0])
    # dense check between samples as well
    for s in np.linspace(0.0, ex.s[n - 1], 400):
        q = ex.state_at(s)
        if q.rho <= fraction * x0:
            err = max(err, abs(q.drho - ke_angle(q.rho, c, p)))
    equator = ex.rho[n - 1]
    return {"sup_error": float(err), "seconds": elapsed, "x0": x0,
            "equator_gap": float(abs(equator - x0)), "classification": ex.classification}


def suite_ke_closed_form(tol: float = 1e-6, seconds: float = 5.0):
    checks = []
    for k, t, c in KE_TUPLES:
        r = ke_oracle_error(k, t, c)
        tag = f"kappa={k} tau={t} c={c}"
        checks.append(_check(f"Ke sphere angle {tag}", r["sup_error"] < tol, r["sup_error"], tol))
        # wall time is kept out of the verdict so reports stay byte-identical
        checks.append(_check(f"Ke sphere runtime {tag}", r["seconds"] < seconds, tol=seconds))
        checks.append(_check(f"Ke equator radius {tag}", r["equator_gap"] < 1e-8,
                             r["equator_gap"], 1e-8))
    return _result("ke-closed-form", checks)


# ---------------------------------------------------------------- monotonicity

def suite_monotonicity(reflection_tol: float = 1e-10):
    checks = []
    for label, *_ in SHIPPED:
        ex = shipped_example(label)
        rep = monotonicity_check(ex)
        checks.append(_check(f"monotone {label}", rep.passed, **{"report": rep.as_dict()}))
        if ex.classification == SPHERE:
            d = reflection_defect(ex)
            checks.append(_check(f"reflection {label}", d < reflection_tol, d, reflection_tol))
    return _result("monotonicity", checks)


# ---------------------------------------------------------------- h2r bound

def random_bounded_phis(n: int = 10, seed: int = 20260101, max_tries: int = 1000):
    """``n`` elliptic ``a + (b-a) tanh(k t)`` with ``0 < a < b <= 5``.

    Draws are rejected until the sampled ellipticity check passes.
    """
    rng = np.random.default_rng(seed)
    out = []
    grid = EllipticityGrid(n_v=2)
    for _ in range(max_tries):
        if len(out) == n:
            break
        a = 10.0 ** rng.uniform(math.log10(0.05), math.log10(4.0))
        b = rng.uniform(a + 0.05, 5.0)
        k = 10.0 ** rng.uniform(-3.0, 0.0)
        src = f"{a:.6f} + {b - a:.6f}*tanh({k:.6f}*t)"
        cls = GeneralPhi(src)
        if ellipticity_check(cls, grid).passed:
            out.append(cls)
    return out


def bounded_run(cls, params=SpaceParams(-1.0, 0.0), config: SolveConfig = SolveConfig()):
    """Run the canonical example, accepting a capped run as a bounded state."""
    try:
        ex = integrate_canonical(cls, params, config)
        capped = False
    except MaxSExceeded as exc:
        ex, capped = exc.partial, True
    sig = ex.sigma_sq
    return {"phi": cls.expr.source if hasattr(cls, "expr") else cls.describe(),
            "classification": ex.classification, "capped": capped,
            "max_sigma_sq": float(np.nanmax(sig)),
            "passed": bool(ex.classification != BLOWUP and np.nanmax(sig) < 1e6)}


def suite_h2r_bound(n: int = 10, seed: int = 20260101):
    checks = []
    for cls in random_bounded_phis(n, seed):
        r = bounded_run(cls)
        checks.append(_check(f"bounded |sigma|^2 {r['phi']}", r["passed"], r["max_sigma_sq"], 1e6,
                             classification=r["classification"], capped=r["capped"]))
    # affine relations k1 = c - k2 in the hyperboloid model
    for c in (0.8, 1.2, 1.6, 2.4):
        orbit = h2r_orbit(FForm(f"{c} - k2"), OrbitConfig())
        sig = float(np.nanmax(orbit.sigma_sq))
        checks.append(_check(f"bounded orbit k1={c}-k2", orbit.classification != BLOWUP and
                             sig < 1e6, sig, 1e6, classification=orbit.classification))
    return _result("h2r-bound", checks)


# ---------------------------------------------------------------- blowup counterexample

def suite_popu0(phi0: float = 1.1, eps: float = 0.3):
    res = blowup_counterexample(phi0, eps)
    checks = [_check("blend blows up inside (y_eps/2, y_eps)", res.certificate_ok,
                     res.y_star, [res.y_eps / 2, res.y_eps], certificate=res.as_dict())]
    base = h2r_orbit(res.base, OrbitConfig(stop_below_y=res.y_eps / 2))
    checks.append(_check("base class has no blowup in the window",
                         base.classification != BLOWUP, classification=base.classification,
                         y_min=float(base.y.min())))
    return _result("popu0", checks)


# ---------------------------------------------------------------- S2xR

def suite_s2r(R: float = 1.0 / 20.0, tol: float = 1e-3):
    rep = s2r_example(R, s2r_delta(R), tol=tol)
    checks = [_check(f"condition {k}", v) for k, v in rep.conditions.items()]
    checks.append(_check("ratio limit", abs(rep.limit_estimate + 1.0) < tol,
                         rep.limit_estimate, tol))
    control = s2r_example(R, 0.0, tol=tol)
    checks.append(_check("delta=0 control fails some condition", not control.passed,
                         conditions=control.conditions))
    return _result("s2r-example", checks)


# ---------------------------------------------------------------- Berger

def height_sweep(cs, kappa: float = 4.0, tau: float = 0.1):
    """Total height of the constant-``Ke`` spheres for each ``c``."""
    p = SpaceParams(kappa, tau)
    rows = []
    for c in cs:
        ex = integrate_canonical(ConstantKe(float(c)), p)
        rep = B.embeddedness_check(ex, p)
        rows.append({"c": float(c), "classification": ex.classification, **rep})
    return rows


def _random_model_points(rng, n, params):
    pts = []
    lim = 3.0 if not math.isfinite(params.rho_max) else 0.9 * params.rho_max
    for _ in range(n):
        r = lim * math.sqrt(rng.uniform())
        th = rng.uniform(0, 2 * math.pi)
        pts.append((r * math.cos(th), r * math.sin(th), rng.uniform(-5, 5)))
    return pts


def suite_berger(seed: int = 7, n: int = 1000):
    rng = np.random.default_rng(seed)
    checks = []
    for k, t in ((4.0, 0.1), (1.0, 1.0), (2.0, -0.3)):
        p = SpaceParams(k, t)
        T = B.fiber_period(p)
        pts = _random_model_points(rng, n, p)
        unit = per = 0.0
        for x in pts:
            q = B.chart_immersion(x, p).as_r4()
            unit = max(unit, abs(np.linalg.norm(q) - 1.0))
            q2 = B.chart_immersion((x[0], x[1], x[2] + T), p).as_r4()
            per = max(per, float(np.max(np.abs(q2 - q))))
        tag = f"kappa={k} tau={t}"
        checks.append(_check(f"|Psi|=1 {tag}", unit < 1e-12, unit, 1e-12))
        checks.append(_check(f"fiber period {tag}", per < 1e-12, per, 1e-12))
        iso = 0.0
        for x in pts[:50]:
            G = B.pullback_metric(x, p)
            iso = max(iso, float(np.max(np.abs(G - metric_at(x, p)))))
        checks.append(_check(f"pullback isometry {tag}", iso < 1e-6, iso, 1e-6))
        hopf = 0.0
        for x in pts[:200]:
            a = B.hopf_project(B.chart_immersion(x, p), p)
            hopf = max(hopf, float(np.max(np.abs(a - B.inverse_stereo_base(x[0], x[1], p)))))
        checks.append(_check(f"Hopf projection {tag}", hopf < 1e-10, hopf, 1e-10))
        proj_err = 0.0
        for _ in range(n):
            rho, h, th = rng.uniform(0, 5), rng.uniform(-3, 3), rng.uniform(0, 2 * math.pi)
            try:
                a = B.profile_to_stereo(rho, h, th, p).as_array()
                b = B.stereo_project(B.chart_immersion(
                    (rho * math.cos(th), rho * math.sin(th), h), p)).as_array()
            except WeingartenError:
                continue
            proj_err = max(proj_err, float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a)))))
        checks.append(_check(f"closed-form projection {tag}", proj_err < 1e-10, proj_err, 1e-10))
    rows = height_sweep(np.geomspace(0.1, 10.0, 9))
    emb = [r["c"] for r in rows if r["embedded"]]
    non = [r["c"] for r in rows if not r["embedded"]]
    checks.append(_check("height sweep crosses 8 pi tau / kappa", bool(emb and non),
                         threshold=rows[0]["threshold"],
                         heights=[[r["c"], r["height"]] for r in rows]))
    p = SpaceParams(4.0, 0.1)
    rho = np.geomspace(1.0, 1e6, 4001)
    a = 0.05
    rep = B.antipodal_closure_check(rho, a * (1.0 - np.exp(-rho)), p)
    checks.append(_check("antipodal closure of a bounded profile", rep["pass"],
                         rep["opposite_error"], 1e-3, a=rep["a"]))
    return _result("berger", checks)


RUNNERS = {
    "gauss": suite_gauss,
    "cones": suite_cones,
    "ke-closed-form": suite_ke_closed_form,
    "monotonicity": suite_monotonicity,
    "h2r-bound": suite_h2r_bound,
    "popu0": suite_popu0,
    "s2r-example": suite_s2r,
    "berger": suite_berger,
}


def run_suite(name: str) -> dict:
    from .errors import ConfigError
    if name not in RUNNERS:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name]()
