"""The (p, q) unfolding plane of the special-ratio family.

Draws the two transition loci (SVG + CSV in demos/out/), verifies the
leading series coefficients of the cusp-transition branch, and runs a
small parameter circuit that logs where the feature counts jump.

Run: python3 demos/unfolding_plane.py
"""

import os

from equidist.mesh import GridSpec, SweepConfig, sweep
from equidist.rationals import Q
from equidist.special12 import SpecialFamily, fit_cusp_series, loci_csv, loci_svg, plane_loci

os.makedirs("demos/out", exist_ok=True)

loci = plane_loci((Q(-1, 10), Q(1, 10)), n=33)
with open("demos/out/loci.svg", "w") as fh:
    fh.write(loci_svg(loci))
with open("demos/out/loci.csv", "w") as fh:
    fh.write(loci_csv(loci))
print("wrote demos/out/loci.svg and loci.csv")

coeffs = fit_cusp_series(Q(1, 1000), Q(1, 100), n=12, terms=4)
print("cusp branch series p(q)/q^3 = %.12f + %.12f q + ..." % (float(coeffs[0]), float(coeffs[1])))
print("expected                      %.12f + %.12f q + ..." % (1 / 16, 9 / 1024))
print()

cfg = SweepConfig(
    radius=0.01,
    samples=24,
    source=SpecialFamily(1, 0.0, 0.0),
    grid=GridSpec(ranges=((-0.04, 0.04), (-0.04, 0.04)), res=(128, 128)),
)
_, log = sweep(cfg)
print("sweep around the origin, radius 0.01, 24 samples:")
for t in log["transitions"]:
    print(
        "  between samples %s: %s count %d -> %d near (p, q) = (%.4f, %.4f)"
        % (t["between"], t["kind"], t["from"], t["to"], t["at"][0], t["at"][1])
    )
