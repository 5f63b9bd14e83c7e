"""Bracketed scalar root finding."""
from __future__ import annotations

import math
from typing import Callable, Optional


def newton_bisect(f: Callable[[float], float], lo: float, hi: float,
                  fprime: Optional[Callable[[float], float]] = None,
                  x0: Optional[float] = None, rtol: float = 1e-13,
                  atol: float = 0.0, maxiter: int = 200) -> float:
    """Safeguarded Newton iteration inside a sign-changing bracket.

    Newton steps that leave the current bracket, or that fail to shrink
    it fast enough, are replaced by bisection.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("newton_bisect needs a sign change on [lo, hi]")
    x = 0.5 * (lo + hi) if x0 is None or not lo < x0 < hi else x0
    prev_width = hi - lo
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi = x
        tol = rtol * abs(x) + atol
        if hi - lo <= tol:
            return x
        xn = math.nan
        if fprime is not None:
            d = fprime(x)
            if d != 0.0 and math.isfinite(d):
                xn = x - fx / d
        if lo < xn < hi:
            if abs(xn - x) <= tol:
                return xn
            if hi - lo > 0.5 * prev_width:
                xn = 0.5 * (lo + hi)
        else:
            xn = 0.5 * (lo + hi)
        prev_width = hi - lo
        x = xn
    return x


def bisect(f: Callable[[float], float], lo: float, hi: float,
           xtol: float = 0.0, maxiter: int = 300) -> float:
    """Plain bisection down to ``xtol`` or floating point resolution."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    if (flo > 0) == (f(hi) > 0):
        raise ValueError("bisect needs a sign change on [lo, hi]")
    for _ in range(maxiter):
        m = 0.5 * (lo + hi)
        if m in (lo, hi) or hi - lo <= xtol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (flo > 0):
            lo, flo = m, fm
        else:
            hi = m
    return 0.5 * (lo + hi)
