"""Reference solutions with closed or quadrature form.

* cones ``C_beta``: rotational graphs with constant angle ``beta``;
* spheres of constant extrinsic curvature ``c``, whose angle as a
  function of the radius is explicit;
* the right-hand side of the ODE for prescribed extrinsic curvature;
* vertical cylinders.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .classes import WeingartenClass
from .errors import ConfigError, DomainError, NoRoot
from .roots import bisect
from .space import SpaceParams, check_radius

QUAD_ABS_TOL = 1e-12
QUAD_REL_TOL = 1e-13


@dataclass(frozen=True)
class ConeSpec:
    beta: float
    c: float = 0.0

    def __post_init__(self):
        if not (-1.0 < self.beta < 1.0) or self.beta == 0.0:
            raise ConfigError(f"cone angle beta must lie in (-1, 1) minus 0, got {self.beta!r}")


def cone_rho_limit(spec: ConeSpec, params: SpaceParams) -> float:
    """Supremum of radii on which the cone is defined."""
    lim = params.rho_max
    if params.tau != 0.0:
        lim = min(lim, math.sqrt(1.0 - spec.beta**2) / abs(spec.beta * params.tau))
    return lim


def cone_slope(rho, spec: ConeSpec, params: SpaceParams):
    """``dh/drho`` of the cone (vectorised)."""
    b, k, t2 = spec.beta, params.kappa, params.tau**2
    rho = np.asarray(rho, dtype=float)
    q = 1.0 - b * b * (1.0 + t2 * rho * rho)
    return 4.0 / b * np.sqrt(np.maximum(q, 0.0)) / (4.0 + k * rho * rho)


def _check_cone_radius(rho, spec, params):
    lim = cone_rho_limit(spec, params)
    if not 0.0 <= rho < lim:
        raise DomainError(f"rho={rho!r} outside the cone domain [0, {lim!r})")


def cone_height(rho: float, spec: ConeSpec, params: SpaceParams) -> float:
    """Height of the cone over radius ``rho``."""
    _check_cone_radius(rho, spec, params)
    val, _ = quad(lambda t: float(cone_slope(t, spec, params)), 0.0, rho,
                  epsabs=QUAD_ABS_TOL, epsrel=QUAD_REL_TOL, limit=200)
    return val + spec.c


def cone_heights(rho: np.ndarray, spec: ConeSpec, params: SpaceParams) -> np.ndarray:
    """Heights on an increasing grid, accumulating quadrature per interval."""
    rho = np.asarray(rho, dtype=float)
    for r in (rho[0], rho[-1]):
        _check_cone_radius(r, spec, params)
    if np.any(np.diff(rho) <= 0):
        raise ValueError("radii must be strictly increasing")
    parts = [cone_height(rho[0], spec, params) - spec.c]
    for a, b in zip(rho[:-1], rho[1:]):
        v, _ = quad(lambda t: float(cone_slope(t, spec, params)), a, b,
                    epsabs=QUAD_ABS_TOL, epsrel=QUAD_REL_TOL)
        parts.append(v)
    return np.cumsum(parts) + spec.c


# ---------------------------------------------------------------- Ke = c

def _log_ratio_over(x2, params):
    """``log((4-(k-8t^2)x^2)/(4+k x^2)) / (k - 4 t^2)`` with its removable limit."""
    k = params.kappa
    eps = params.bundle_defect
    den = 4.0 + k * x2
    z = -2.0 * eps * x2 / den
    # log1p(z)/z -> 1 as z -> 0
    ratio = math.log1p(z) / z if abs(z) > 1e-12 else 1.0 - z / 2.0
    return -2.0 * x2 / den * ratio


def ke_domain_limit(params: SpaceParams) -> float:
    """Right end ``x*`` of the interval where the first integral is defined."""
    k, t2 = params.kappa, params.tau**2
    if k < 0:
        return 2.0 / math.sqrt(-k)
    if k > 8.0 * t2:
        return 2.0 / math.sqrt(k - 8.0 * t2)
    return math.inf


def ke_delta(x: float, c: float, params: SpaceParams) -> float:
    """Square of the angle of the constant-``Ke`` sphere at radius ``x``.

    Uses ``1 + 2(c+tau^2)/(kappa-4tau^2) log(...)``, evaluated through
    ``log1p`` so that it passes continuously to
    ``1 - (c+tau^2) x^2/(1+tau^2 x^2)`` when ``kappa = 4 tau^2``.
    """
    if x < 0 or not x < ke_domain_limit(params):
        raise DomainError(f"x={x!r} outside [0, {ke_domain_limit(params)!r})")
    x2 = x * x
    if params.bundle_defect == 0.0:
        t2 = params.tau**2
        return 1.0 - (c + t2) * x2 / (1.0 + t2 * x2)
    return 1.0 + 2.0 * (c + params.tau**2) * _log_ratio_over(x2, params)


def ke_angle(x: float, c: float, params: SpaceParams) -> float:
    d = ke_delta(x, c, params)
    if d < 0:
        raise DomainError(f"no real angle at x={x!r}: delta={d!r} < 0")
    return math.sqrt(d)


def ke_x0(c: float, params: SpaceParams) -> float:
    """Equator radius of the constant-``Ke`` sphere, the zero of ``delta``."""
    if not c > 0:
        raise ConfigError("c must be positive")
    lim = ke_domain_limit(params)
    f = lambda x: ke_delta(x, c, params)
    if math.isinf(lim):
        hi = 1.0
        while f(hi) > 0:
            hi *= 2.0
            if hi > 1e12:
                raise NoRoot(f"delta stays positive up to x={hi!r}")
    else:
        hi = lim * (1.0 - 1e-15)
        if f(hi) > 0:
            raise NoRoot(f"delta({hi!r}) = {f(hi)!r} > 0: no equator inside the domain")
    return bisect(f, 0.0, hi, xtol=1e-14)


def minkowski_rhs(x: float, y: float, cls: WeingartenClass, params: SpaceParams) -> float:
    """``dy/dx`` times ``y`` for prescribed extrinsic curvature ``Phi(y^2)``."""
    k, t2 = params.kappa, params.tau**2
    x2 = x * x
    den = (4.0 + k * x2) * (-4.0 + (k - 8.0 * t2) * x2)
    if den == 0.0:
        raise DomainError(f"denominator vanishes at x={x!r}")
    return 16.0 * x * (cls.ke_value(y * y) + t2) / den


def cylinder_ke(params: SpaceParams) -> float:
    """Extrinsic curvature of every vertical cylinder about the axis."""
    return -params.tau**2


def cylinder_patch(R: float, params: SpaceParams):
    check_radius(R, params)

    def X(z, th):
        return np.array([R * math.cos(th), R * math.sin(th), z])
    return X
