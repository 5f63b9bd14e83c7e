"""Which constant-Ke spheres of a Berger sphere are embedded.

The model covers the Berger sphere periodically in the vertical
direction, so a rotational sphere is embedded only if its height stays
below the fiber period. The script sweeps c, prints height against the
period, and writes the stereographic profiles as SVG files.

    python demos/berger_embeddedness.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np

from weingarten.berger import embeddedness_check, fiber_period, profile_curve
from weingarten.classes import ConstantKe
from weingarten.output import profile_svg, write_text
from weingarten.solver import integrate_canonical
from weingarten.space import SpaceParams

P = SpaceParams.from_name("Berger")


def main(outdir="berger_profiles"):
    out = Path(outdir)
    out.mkdir(exist_ok=True)
    print(f"fiber period {fiber_period(P):.6f}")
    for c in np.geomspace(0.1, 10.0, 9):
        ex = integrate_canonical(ConstantKe(float(c)), P)
        rep = embeddedness_check(ex, P)
        print(f"c = {c:7.4f}  height {rep['height']:.6f}  "
              f"{'embedded' if rep['embedded'] else 'not embedded'}")
        curve = profile_curve(ex.rho, ex.h, P)
        svg = profile_svg(curve[:, 0], curve[:, 1], f"Ke = {c:.3g} in Berger(4, 0.1)",
                          xlabel="distance to axis", ylabel="y3")
        write_text(out / f"ke_{c:.4f}.svg", svg)
    print(f"profiles written to {out}/")


if __name__ == "__main__":
    main(*sys.argv[1:])
