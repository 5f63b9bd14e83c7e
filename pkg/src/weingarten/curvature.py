"""Curvature of rotational surfaces ``(rho cos v, rho sin v, h)``.

Two parametrizations of the profile are used. In the ``s`` form the
profile has unit speed for the auxiliary metric
``(1 + tau^2 rho^2) drho^2 + (4 + kappa rho^2)^2/16 dh^2``, so that
``rho'`` is the angle function. In the ``u`` form ``rho(u)`` and ``h(u)``
are arbitrary and derivatives are taken numerically.

The module also provides two independent finite-difference oracles on
arbitrary patches: the shape operator assembled from numeric Christoffel
symbols, and the Brioschi formula for the intrinsic curvature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, SingularAxis
from .space import SpaceParams, check_radius, metric_at


@dataclass(frozen=True)
class FDConfig:
    """Every finite-difference constant used by the oracles."""

    axis_threshold: float = 1e-8
    radicand_tol: float = 1e-12
    h_fd: float = 1e-4
    christoffel_h: float = 1e-5
    brioschi_inner: float = 1e-3
    brioschi_outer: float = 1e-2


FD = FDConfig()

# 4th-order central stencils (offsets -2..2)
D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


@dataclass(frozen=True)
class ProfileState:
    s: float
    rho: float
    drho: float
    h: float

    @property
    def nu(self) -> float:
        return self.drho


def _radicand(rho, drho, params):
    return 1.0 - (1.0 + params.tau**2 * rho * rho) * drho * drho


def h_prime(state: ProfileState | tuple, params: SpaceParams, tol: float = FD.radicand_tol) -> float:
    """Height derivative on the branch ``h' >= 0``.

    ``state`` may be a :class:`ProfileState` or a ``(rho, drho)`` pair.
    """
    rho, drho = (state.rho, state.drho) if isinstance(state, ProfileState) else state
    check_radius(rho, params)
    q = _radicand(rho, drho, params)
    if q < 0:
        if q < -tol:
            raise DomainError(f"unit-speed radicand {q!r} is negative")
        q = 0.0
    return 4.0 * math.sqrt(q) / (4.0 + params.kappa * rho * rho)


def mean_curvature_s(rho: float, drho: float, ddrho: float, params: SpaceParams,
                     axis_threshold: float = FD.axis_threshold) -> float:
    """Mean curvature in the ``s`` parametrization."""
    if rho <= axis_threshold:
        raise SingularAxis(f"rho={rho!r} is within the axis threshold")
    k, t2 = params.kappa, params.tau**2
    q = _radicand(rho, drho, params)
    if q <= 0:
        raise DomainError("unit-speed radicand is not positive")
    r2 = rho * rho
    num = (4.0 + drho * drho * (-4.0 + (k - 8.0 * t2) * r2)
           - rho * (k * rho + ddrho * (4.0 + k * r2) * (1.0 + t2 * r2)))
    return num / (8.0 * rho * math.sqrt(q))


def mean_curvature_affine(rho, drho, params):
    """Coefficients ``(a, b)`` with ``H = a + b rho''``."""
    k, t2 = params.kappa, params.tau**2
    q = _radicand(rho, drho, params)
    if q <= 0:
        raise DomainError("unit-speed radicand is not positive")
    r2 = rho * rho
    d = 8.0 * rho * math.sqrt(q)
    a = (4.0 + drho * drho * (-4.0 + (k - 8.0 * t2) * r2) - k * r2) / d
    b = -rho * (4.0 + k * r2) * (1.0 + t2 * r2) / d
    return a, b


def extrinsic_curvature_s(rho: float, ddrho: float, params: SpaceParams,
                          axis_threshold: float = FD.axis_threshold) -> float:
    """Extrinsic curvature (determinant of the shape operator), ``s`` form."""
    if rho <= axis_threshold:
        raise SingularAxis(f"rho={rho!r} is within the axis threshold")
    a, b = extrinsic_affine(rho, params)
    return a + b * ddrho


def extrinsic_affine(rho, params):
    """Coefficients ``(a, b)`` with ``Ke = a + b rho''``."""
    k, t2 = params.kappa, params.tau**2
    r2 = rho * rho
    return -t2, (4.0 + k * r2) * (-4.0 + (k - 8.0 * t2) * r2) / (16.0 * rho)


def umbilicity_split(rho: float, drho: float, params: SpaceParams) -> tuple[float, float]:
    """Terms ``(k_par, w)`` with ``H^2 - Ke = (H - k_par)^2 + w^2``.

    ``k_par`` is the part of the shape operator along the parallels and
    ``w`` its off-diagonal entry, nonzero only when ``tau != 0`` and the
    space is not a space form. Writing ``H^2 - Ke`` this way avoids the
    cancellation of the direct difference near umbilic points.
    """
    k, t2 = params.kappa, params.tau**2
    r2 = rho * rho
    q = max(_radicand(rho, drho, params), 0.0)
    k_par = (4.0 - (k - 8.0 * t2) * r2) * math.sqrt(q) / (4.0 * rho * (1.0 + t2 * r2))
    w = params.tau * r2 * params.bundle_defect / (4.0 * (1.0 + t2 * r2))
    return k_par, w


def sigma_norm_sq(H: float, Ke: float) -> float:
    """Squared norm of the second fundamental form, ``k1^2 + k2^2``."""
    if H * H < Ke - 1e-12:
        raise DomainError(f"complex principal curvatures: H^2={H*H!r} < Ke={Ke!r}")
    return 4.0 * H * H - 2.0 * Ke


def principal_curvatures(H: float, Ke: float) -> tuple[float, float]:
    d = H * H - Ke
    if d < -1e-10:
        raise DomainError("complex principal curvatures")
    r = math.sqrt(max(d, 0.0))
    return H + r, H - r


# ---------------------------------------------------------------- u form

def graph_formulas(rho, drho, ddrho, dh, ddh, params):
    """Angle, mean and extrinsic curvature from ``u``-derivatives.

    Vectorised over numpy arrays. Here ``drho = d rho/du`` etc.
    """
    k, t2 = params.kappa, params.tau**2
    rho, drho, ddrho, dh, ddh = map(np.asarray, (rho, drho, ddrho, dh, ddh))
    r2 = rho * rho
    A = 4.0 + k * r2
    D = dh * dh * A * A + 16.0 * drho * drho * (1.0 + t2 * r2)
    nu = 4.0 * drho / np.sqrt(D)
    H = (A * A * (-(dh ** 3) * k * k * r2 * r2
              + 16.0 * dh * (dh * dh - rho * ddrho + drho * drho)
              + 16.0 * rho ** 3 * t2 * (ddh * drho - dh * ddrho)
              + 16.0 * ddh * rho * drho)
         / (8.0 * rho * D ** 1.5))
    Ke = (dh * A * A * (4.0 - r2 * (k - 8.0 * t2))
          * (ddh * drho * A - dh * (ddrho * A - 2.0 * rho * drho * drho * (k - 4.0 * t2)))
          / (rho * D * D)
          - t2 * (dh * dh * A * A + 4.0 * r2 * drho * drho * (k - 4.0 * t2)) ** 2 / (D * D))
    return nu, H, Ke


def graph_curvatures_u(u, rho, h, params: SpaceParams):
    """Angle, mean and extrinsic curvature of sampled ``(rho(u), h(u))``.

    Parameters
    ----------
    u : array_like
        Uniformly spaced parameter values.
    rho, h : array_like
        Samples of the profile.

    Returns
    -------
    nu, H, Ke : ndarray
        Values at the interior points ``u[2:-2]``.
    """
    u, rho, h = (np.asarray(a, dtype=float) for a in (u, rho, h))
    du = np.diff(u)
    step = du.mean()
    if not np.allclose(du, step, rtol=1e-9, atol=0):
        raise ValueError("graph_curvatures_u needs a uniform grid")
    if params.kappa < 0 and np.any(rho >= params.rho_max):
        raise DomainError("profile leaves the model disk")

    def stencil(y, w, p):
        return sum(w[j] * y[j:len(y) - 4 + j] for j in range(5)) / step ** p

    inner = rho[2:-2]
    return graph_formulas(inner, stencil(rho, D1, 1), stencil(rho, D2, 2),
                          stencil(h, D1, 1), stencil(h, D2, 2), params)


# ---------------------------------------------------------------- oracles

Patch = Callable[[float, float], np.ndarray]


def rotational_patch(rho_fn, h_fn) -> Patch:
    """Patch ``(s, theta) -> (rho cos theta, rho sin theta, h)``."""
    def X(s, th):
        r = rho_fn(s)
        return np.array([r * math.cos(th), r * math.sin(th), h_fn(s)])
    return X


def christoffel(x, params: SpaceParams, h: float = FD.christoffel_h) -> np.ndarray:
    """Numeric Christoffel symbols ``Gamma[k, i, j]`` of the ambient metric."""
    x = np.asarray(x, dtype=float)
    dg = np.zeros((3, 3, 3))  # dg[l] = d g / d x_l
    for l in range(3):
        e = np.zeros(3)
        e[l] = h
        acc = np.zeros((3, 3))
        for w, o in zip(D1, range(-2, 3)):
            if w:
                acc += w * metric_at(x + o * e, params)
        dg[l] = acc / h
    ginv = np.linalg.inv(metric_at(x, params))
    # Gamma_{l i j} (lowered) = (d_i g_{lj} + d_j g_{li} - d_l g_{ij}) / 2
    low = 0.5 * (np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg)
    return np.einsum("kl,lij->kij", ginv, low)


def _partials(patch: Patch, u, v, h):
    """First and second partials of a patch by 4th-order central differences."""
    offs = range(-2, 3)
    pu = [patch(u + o * h, v) for o in offs]
    pv = [patch(u, v + o * h) for o in offs]
    Xu = sum(w * p for w, p in zip(D1, pu)) / h
    Xv = sum(w * p for w, p in zip(D1, pv)) / h
    Xuu = sum(w * p for w, p in zip(D2, pu)) / h**2
    Xvv = sum(w * p for w, p in zip(D2, pv)) / h**2
    Xuv = np.zeros(3)
    for a, wa in zip(offs, D1):
        for b, wb in zip(offs, D1):
            if wa and wb:
                Xuv += wa * wb * patch(u + a * h, v + b * h)
    Xuv /= h * h
    return pu[2], Xu, Xv, Xuu, Xuv, Xvv


def unit_normal(x, Xu, Xv, params):
    """Unit normal with nonnegative vertical component ``<N, d/dx3>``."""
    g = metric_at(x, params)
    n = np.linalg.solve(g, np.cross(Xu, Xv))
    n /= math.sqrt(n @ g @ n)
    # d/dx3 is a unit vector field; its metric dual is the third row of g
    if n @ g[:, 2] < 0:
        n = -n
    return n


def fd_shape_operator_oracle(patch: Patch, u: float, v: float, params: SpaceParams,
                             h_fd: float = FD.h_fd, normal_sign: float = 1.0):
    """Mean, extrinsic curvature and angle at ``patch(u, v)``.

    The normal is the one with ``nu >= 0``, multiplied by ``normal_sign``.

    Returns
    -------
    H, Ke, nu : float
    """
    x, Xu, Xv, Xuu, Xuv, Xvv = _partials(patch, u, v, h_fd)
    g = metric_at(x, params)
    G = christoffel(x, params)
    N = normal_sign * unit_normal(x, Xu, Xv, params)

    def cov(A, B, AB):
        return AB + np.einsum("kij,i,j->k", G, A, B)

    E, F, Gm = Xu @ g @ Xu, Xu @ g @ Xv, Xv @ g @ Xv
    L = cov(Xu, Xu, Xuu) @ g @ N
    M = cov(Xu, Xv, Xuv) @ g @ N
    Nn = cov(Xv, Xv, Xvv) @ g @ N
    det = E * Gm - F * F
    H = (E * Nn - 2 * F * M + Gm * L) / (2 * det)
    Ke = (L * Nn - M * M) / det
    nu = float(N @ g[:, 2])
    return float(H), float(Ke), nu


def first_fundamental_form(patch: Patch, u, v, params, h=FD.brioschi_inner):
    offs = range(-2, 3)
    Xu = sum(w * patch(u + o * h, v) for w, o in zip(D1, offs) if w) / h
    Xv = sum(w * patch(u, v + o * h) for w, o in zip(D1, offs) if w) / h
    g = metric_at(patch(u, v), params)
    return np.array([Xu @ g @ Xu, Xu @ g @ Xv, Xv @ g @ Xv])


def brioschi_curvature(patch: Patch, u: float, v: float, params: SpaceParams,
                       h_inner: float = FD.brioschi_inner,
                       h_outer: float = FD.brioschi_outer, metric=None) -> float:
    """Intrinsic curvature from the induced metric via the Brioschi formula.

    ``metric(u, v) -> (E, F, G)`` may be supplied when the tangent vectors
    are known; otherwise the metric is built from finite differences of
    ``patch`` with step ``h_inner``.
    """
    H = h_outer
    offs = range(-2, 3)
    efg = {}

    def at(a, b):
        key = (a, b)
        if key not in efg:
            if metric is not None:
                efg[key] = np.asarray(metric(u + a * H, v + b * H), float)
            else:
                efg[key] = first_fundamental_form(patch, u + a * H, v + b * H, params, h_inner)
        return efg[key]

    c = at(0, 0)
    du = sum(w * at(o, 0) for w, o in zip(D1, offs) if w) / H
    dv = sum(w * at(0, o) for w, o in zip(D1, offs) if w) / H
    duu = sum(w * at(o, 0) for w, o in zip(D2, offs)) / H**2
    dvv = sum(w * at(0, o) for w, o in zip(D2, offs)) / H**2
    duv = np.zeros(3)
    for a, wa in zip(offs, D1):
        for b, wb in zip(offs, D1):
            if wa and wb:
                duv += wa * wb * at(a, b)
    duv /= H * H
    E, F, G = c
    Eu, Fu, Gu = du
    Ev, Fv, Gv = dv
    Evv, Fuv, Guu = dvv[0], duv[1], duu[2]
    m1 = np.array([[-Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2],
                   [Fv - Gu / 2, E, F],
                   [Gv / 2, F, G]])
    m2 = np.array([[0.0, Ev / 2, Gu / 2],
                   [Ev / 2, E, F],
                   [Gu / 2, F, G]])
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / (E * G - F * F) ** 2)


def rotational_graph_metric(h_fn, dh_fn, params: SpaceParams):
    """Induced metric ``(E, F, G)`` of the graph ``x3 = h(rho)`` in polar coordinates.

    ``dh_fn`` is the exact slope, so only ``h_fn`` is differenced when
    the result is fed to :func:`brioschi_curvature`.
    """
    def efg(rho, th):
        c, s = math.cos(th), math.sin(th)
        Xr = np.array([c, s, dh_fn(rho)])
        Xt = np.array([-rho * s, rho * c, 0.0])
        g = metric_at((rho * c, rho * s, h_fn(rho)), params)
        return np.array([Xr @ g @ Xr, Xr @ g @ Xt, Xt @ g @ Xt])
    return efg
