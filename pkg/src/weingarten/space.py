"""The homogeneous spaces E(kappa, tau) in their global coordinate model.

Points are triples ``(x1, x2, x3)``; when ``kappa < 0`` the horizontal
coordinates live in the open disk of radius ``2/sqrt(-kappa)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, BoundaryError

# Relative margin kept between a radius and the edge of the disk model.
EDGE_MARGIN = 1e-12


@dataclass(frozen=True)
class SpaceParams:
    """Base curvature ``kappa`` and bundle curvature ``tau``."""

    kappa: float
    tau: float

    def __post_init__(self):
        for name in ("kappa", "tau"):
            val = getattr(self, name)
            if not isinstance(val, (int, float)) or not math.isfinite(val):
                raise ConfigError(f"{name} must be a finite real number, got {val!r}")
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def rho_max(self) -> float:
        """Radius of the horizontal disk (infinite unless ``kappa < 0``)."""
        if self.kappa < 0:
            return 2.0 / math.sqrt(-self.kappa)
        return math.inf

    @property
    def bundle_defect(self) -> float:
        """``kappa - 4 tau^2``; zero for the space forms R^3 and S^3."""
        return self.kappa - 4.0 * self.tau**2

    @classmethod
    def from_name(cls, name: str, scale: float = 1.0) -> "SpaceParams":
        """Build a standard space by name.

        Recognised names are ``R3``, ``H2xR``, ``S2xR``, ``Nil3``, ``S3``
        and ``Berger``. The hyperbolic space ``H3`` has no such model and
        is rejected.
        """
        key = name.strip().lower().replace("×", "x").replace("_", "")
        table = {
            "r3": (0.0, 0.0),
            "h2xr": (-scale, 0.0),
            "s2xr": (scale, 0.0),
            "nil3": (0.0, scale),
            "nil": (0.0, scale),
            "s3": (4.0 * scale**2, scale),
            "berger": (4.0, 0.1),
        }
        if key in ("h3", "hyperbolic"):
            raise ConfigError("hyperbolic 3-space is not an E(kappa, tau) space")
        if key not in table:
            raise ConfigError(f"unknown space name {name!r}")
        return cls(*table[key])


@dataclass(frozen=True)
class ModelPoint:
    x1: float
    x2: float
    x3: float

    @property
    def rho(self) -> float:
        return math.hypot(self.x1, self.x2)


def check_radius(rho: float, params: SpaceParams) -> None:
    """Raise if ``rho`` is negative or too close to the disk boundary."""
    if not rho >= 0.0:
        raise DomainError(f"radial coordinate must be nonnegative, got {rho!r}")
    if params.kappa < 0 and rho >= params.rho_max * (1.0 - EDGE_MARGIN):
        raise BoundaryError(
            f"rho={rho!r} leaves the model disk of radius {params.rho_max!r}")


def lambda_factor(rho: float, params: SpaceParams) -> float:
    """Conformal factor ``1/(1 + kappa rho^2/4)`` of the horizontal metric."""
    check_radius(rho, params)
    return 1.0 / (1.0 + 0.25 * params.kappa * rho * rho)


def metric_at(p, params: SpaceParams) -> np.ndarray:
    """Coefficient matrix of the ambient metric at ``p``.

    Parameters
    ----------
    p : ModelPoint or sequence of three floats
    params : SpaceParams

    Returns
    -------
    ndarray, shape (3, 3)
    """
    x1, x2, _ = (p.x1, p.x2, p.x3) if isinstance(p, ModelPoint) else p
    lam = lambda_factor(math.hypot(x1, x2), params)
    # ds^2 = lam^2 (dx1^2 + dx2^2) + w^2 with w = tau lam (x2 dx1 - x1 dx2) + dx3
    w = np.array([params.tau * lam * x2, -params.tau * lam * x1, 1.0])
    g = np.outer(w, w)
    g[0, 0] += lam * lam
    g[1, 1] += lam * lam
    return g


def gauss_K(Ke: float, nu: float, params: SpaceParams) -> float:
    """Intrinsic curvature from the extrinsic curvature and angle function."""
    return Ke + params.tau**2 + params.bundle_defect * nu * nu


def geodesic_radius(rho: float, params: SpaceParams) -> float:
    """Horizontal distance from the axis, the integral of ``lambda``."""
    check_radius(rho, params)
    k = params.kappa
    if k > 0:
        r = math.sqrt(k)
        return 2.0 / r * math.atan(0.5 * r * rho)
    if k < 0:
        r = math.sqrt(-k)
        return 2.0 / r * math.atanh(0.5 * r * rho)
    return rho
