"""Berger spheres (``kappa > 0``, ``tau != 0``) as the unit sphere of C^2.

The coordinate model covers the Berger sphere through the immersion
``Psi``, periodic with period ``8 pi tau/kappa`` in ``x3``. Profiles are
drawn in R^3 by stereographic projection from ``(0, 0, 0, 1)``, with
``(z, w)`` identified with ``(Re z, Im z, Re w, Im w)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NonConvergent, PoleError, TangencyError
from .space import ModelPoint, SpaceParams, lambda_factor


@dataclass(frozen=True)
class BergerPoint:
    z: complex
    w: complex

    def __post_init__(self):
        n = abs(self.z) ** 2 + abs(self.w) ** 2
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"|z|^2 + |w|^2 = {n!r} is not 1")

    def as_r4(self) -> np.ndarray:
        return np.array([self.z.real, self.z.imag, self.w.real, self.w.imag])

    @classmethod
    def from_r4(cls, x) -> "BergerPoint":
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))


@dataclass(frozen=True)
class StereoPoint:
    y1: float
    y2: float
    y3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.y1, self.y2, self.y3])


def _require_berger(params: SpaceParams):
    if not (params.kappa > 0 and params.tau != 0):
        raise ConfigError("Berger sphere charts need kappa > 0 and tau != 0")


def fiber_period(params: SpaceParams) -> float:
    """Period in ``x3`` of the chart immersion."""
    _require_berger(params)
    return 8.0 * math.pi * params.tau / params.kappa


def vertical_field(p: BergerPoint) -> np.ndarray:
    """``(iz, iw)`` as a vector of R^4."""
    return np.array([-p.z.imag, p.z.real, -p.w.imag, p.w.real])


def frame(p: BergerPoint):
    """Orthonormal frame ``(e1, e2, xi)`` of the round sphere at ``p``."""
    z, w = p.z, p.w
    e1 = (-w.conjugate(), z.conjugate())
    e2 = (-1j * w.conjugate(), 1j * z.conjugate())
    to4 = lambda a, b: np.array([a.real, a.imag, b.real, b.imag])
    return to4(*e1), to4(*e2), vertical_field(p)


def berger_metric(p: BergerPoint, X, Y, params: SpaceParams, tol: float = 1e-10) -> float:
    """Berger metric on tangent vectors given in R^4."""
    if params.kappa <= 0:
        raise ConfigError("the Berger metric needs kappa > 0")
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    x = p.as_r4()
    for V in (X, Y):
        if abs(V @ x) > tol * max(1.0, np.linalg.norm(V)):
            raise TangencyError("vector is not tangent to the sphere at p")
    xi = vertical_field(p)
    k = params.kappa
    return 4.0 / k * (X @ Y + (4.0 * params.tau**2 / k - 1.0) * (X @ xi) * (Y @ xi))


def hopf_project(p: BergerPoint, params: SpaceParams) -> np.ndarray:
    """Hopf map onto the sphere of radius ``1/sqrt(kappa)``."""
    zw = p.z * p.w.conjugate()
    c = 2.0 / math.sqrt(params.kappa)
    return c * np.array([zw.real, zw.imag, 0.5 * (abs(p.z) ** 2 - abs(p.w) ** 2)])


def inverse_stereo_base(x1: float, x2: float, params: SpaceParams) -> np.ndarray:
    """Base point in the sphere of radius ``1/sqrt(kappa)`` over ``(x1, x2)``."""
    lam = lambda_factor(math.hypot(x1, x2), params)
    return np.array([lam * x1, lam * x2, (1.0 - 2.0 * lam) / math.sqrt(params.kappa)])


def chart_immersion(p, params: SpaceParams) -> BergerPoint:
    """The map ``Psi`` from the coordinate model into the unit sphere of C^2."""
    _require_berger(params)
    x1, x2, x3 = (p.x1, p.x2, p.x3) if isinstance(p, ModelPoint) else p
    lam = lambda_factor(math.hypot(x1, x2), params)
    sig = params.kappa / (4.0 * params.tau)
    ph = complex(math.cos(sig * x3), math.sin(sig * x3))
    r = math.sqrt(lam)
    z = r * 0.5 * math.sqrt(params.kappa) * complex(x1, x2) * ph
    w = r * ph
    # renormalise away the last ulp so BergerPoint's invariant is exact
    n = math.sqrt(abs(z) ** 2 + abs(w) ** 2)
    return BergerPoint(z / n, w / n)


def isometric_chart(p, params: SpaceParams) -> BergerPoint:
    """``Psi`` precomposed with ``(x1, x2, x3) -> (x1, -x2, x3)``.

    With the metric ``ds^2`` of :func:`weingarten.space.metric_at`,
    ``Psi`` itself pulls the Berger metric back to the model with ``tau``
    replaced by ``-tau``; the reflection turns it into an isometric
    immersion of the model with the given ``tau``. Rotational profiles
    are unaffected since they only involve ``tau^2``.
    """
    x1, x2, x3 = (p.x1, p.x2, p.x3) if isinstance(p, ModelPoint) else p
    return chart_immersion((x1, -x2, x3), params)


def pullback_metric(p, params: SpaceParams, chart=None, step: float = 1e-6) -> np.ndarray:
    """Berger metric pulled back through ``chart`` by central differences."""
    chart = chart or isometric_chart
    x = np.array((p.x1, p.x2, p.x3) if isinstance(p, ModelPoint) else p, float)
    q = chart(x, params)
    J = []
    for i in range(3):
        d = np.zeros(3)
        d[i] = step
        J.append((chart(x + d, params).as_r4() - chart(x - d, params).as_r4()) / (2 * step))
    return np.array([[berger_metric(q, J[i], J[j], params, tol=1e-6) for j in range(3)]
                     for i in range(3)])


def stereo_project(p) -> StereoPoint:
    """Stereographic projection of R^4 from ``(0, 0, 0, 1)``."""
    x = p.as_r4() if isinstance(p, BergerPoint) else np.asarray(p, float)
    d = 1.0 - x[3]
    if d <= 1e-14:
        raise PoleError("point coincides with the projection pole")
    return StereoPoint(x[0] / d, x[1] / d, x[2] / d)


def profile_to_stereo(rho: float, h: float, theta: float, params: SpaceParams) -> StereoPoint:
    """Closed form of ``stereo_project(Psi(rho cos theta, rho sin theta, h))``."""
    _require_berger(params)
    k = params.kappa
    sig = k / (4.0 * params.tau)
    d = math.sqrt(1.0 + 0.25 * k * rho * rho) - math.sin(sig * h)
    if d <= 1e-14:
        raise PoleError("profile point maps to the projection pole")
    c = 0.5 * math.sqrt(k) * rho
    return StereoPoint(c * math.cos(theta + sig * h) / d,
                       c * math.sin(theta + sig * h) / d,
                       math.cos(sig * h) / d)


def profile_curve(rho, h, params: SpaceParams) -> np.ndarray:
    """Distance to the ``y3`` axis and height ``y3`` of the projected profile."""
    _require_berger(params)
    k = params.kappa
    sig = k / (4.0 * params.tau)
    rho, h = np.asarray(rho, float), np.asarray(h, float)
    d = np.sqrt(1.0 + 0.25 * k * rho * rho) - np.sin(sig * h)
    # the stereographic image is rotational about the y3 axis
    return np.column_stack((0.5 * math.sqrt(k) * rho / d, np.cos(sig * h) / d))


def embeddedness_check(example, params: SpaceParams | None = None) -> dict:
    """Compare the vertical extent of a sphere with the fiber period."""
    params = params or example.params
    thr = fiber_period(params)
    height = float(np.max(example.h) - np.min(example.h))
    return {"embedded": bool(height < thr), "height": height, "threshold": thr}


# ---------------------------------------------------------------- closure

def shanks(a0: float, a1: float, a2: float) -> float:
    """Shanks transform of three consecutive terms."""
    den = a2 - 2.0 * a1 + a0
    if den == 0.0:
        return a2
    return a2 - (a2 - a1) ** 2 / den


def limit_tangent(a: float, params: SpaceParams) -> np.ndarray:
    """Unit tangent of the stereographic profile at ``(1, 0)``, given ``h -> a``."""
    sig = params.kappa / (4.0 * params.tau)
    return np.array([-math.sin(sig * a), -math.cos(sig * a)])


def reflected_height(h, a: float, params: SpaceParams):
    """Height of the surface closing the profile through the antipodal fiber."""
    return -np.asarray(h, float) + 4.0 * math.pi * params.tau / params.kappa + 2.0 * a


def antipodal_closure_check(rho, h, params: SpaceParams, tol: float = 1e-3) -> dict:
    """Check that a profile with ``rho -> inf`` closes up C^1 at ``(1, 0)``.

    The limit ``a`` of ``h`` is extrapolated from three geometrically
    spaced radii over the last decade of samples. The report holds the
    predicted tangent, the numeric tangents of the profile and of its
    closing reflection, and whether these are opposite within ``tol``.

    Raises
    ------
    NonConvergent
        If the increments of ``h`` do not shrink over the last decade.
    """
    _require_berger(params)
    rho, h = np.asarray(rho, float), np.asarray(h, float)
    r_end = rho[-1]
    if r_end <= 10.0 * rho[0]:
        raise NonConvergent("samples do not span a decade in rho")
    pts = r_end * np.array([0.01, 0.1 / math.sqrt(10.0), 0.1, 1.0 / math.sqrt(10.0), 1.0])
    hs = np.interp(pts, rho, h)
    d1, d2 = abs(hs[3] - hs[2]), abs(hs[4] - hs[3])
    if not d2 < d1 or not abs(hs[4] - hs[2]) < abs(hs[2] - hs[0]) + 1e-15:
        if not (d1 < 1e-14 and d2 < 1e-14):
            raise NonConvergent("height does not converge over the last decade")
    a = shanks(hs[2], hs[3], hs[4])
    if not math.isfinite(a):
        raise NonConvergent("extrapolated limit is not finite")
    va = limit_tangent(a, params)
    end = np.array([1.0, 0.0])
    g = profile_curve(rho[-1:], h[-1:], params)[0]
    gs = profile_curve(rho[-1:], reflected_height(h[-1:], a, params), params)[0]
    # tangent as rho increases points from the curve into (1, 0)
    v = (end - g) / np.linalg.norm(end - g)
    vs = (end - gs) / np.linalg.norm(end - gs)
    return {"a": float(a), "v_a": va.tolist(), "tangent": v.tolist(),
            "tangent_reflected": vs.tolist(),
            "opposite_error": float(np.linalg.norm(v + vs)),
            "prediction_error": float(np.linalg.norm(v - va)),
            "pass": bool(np.linalg.norm(v + vs) < tol and np.linalg.norm(v - va) < tol)}
