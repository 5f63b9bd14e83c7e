"""Spheres versus entire graphs for constant mean curvature in H2xR.

Below H = 1/2 the canonical example is an entire graph over the disk
model; above it the profile turns over and closes into a sphere. The
script bisects the classification to locate the flip.

    python demos/h2r_dichotomy.py
"""
from weingarten.classes import ConstantH
from weingarten.solver import SPHERE, integrate_canonical
from weingarten.space import SpaceParams

P = SpaceParams.from_name("H2xR")


def label(H):
    return integrate_canonical(ConstantH(H), P).classification


def main():
    for H in (0.3, 0.4, 0.45, 0.55, 0.6, 1.0):
        ex = integrate_canonical(ConstantH(H), P)
        print(f"H = {H:4.2f}  {ex.classification:12s}  min angle {ex.drho.min():+.4f}")
    lo, hi = 0.45, 0.55
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if label(mid) == SPHERE else (mid, hi)
    print(f"classification flips at H = {0.5 * (lo + hi):.8f}")


if __name__ == "__main__":
    main()
