"""Constant extrinsic curvature spheres against their first integral.

For Ke = c the angle of the rotational sphere is known in closed form as
a function of the radius. This script integrates the profile ODE in four
spaces and prints the largest gap to that closed form, the equator
radius, and the total height of each sphere.

    python demos/ke_spheres.py
"""
from weingarten.classes import ConstantKe
from weingarten.closed_forms import ke_x0
from weingarten.solver import integrate_canonical
from weingarten.space import SpaceParams
from weingarten.suites import KE_TUPLES, ke_oracle_error


def main():
    print(f"{'kappa':>6} {'tau':>5} {'equator':>10} {'height':>10} {'sup |nu - closed|':>18}")
    for kappa, tau, c in KE_TUPLES:
        p = SpaceParams(kappa, tau)
        ex = integrate_canonical(ConstantKe(c), p)
        err = ke_oracle_error(kappa, tau, c)["sup_error"]
        print(f"{kappa:6g} {tau:5g} {ke_x0(c, p):10.6f} "
              f"{ex.diagnostics['total_height']:10.6f} {err:18.2e}")


if __name__ == "__main__":
    main()
