"""Walk the ratio landscape of one surface pair.

Builds a pair whose cubic strengths are perfect squares (so the special
ratios are exact rationals), prints the landscape, then classifies a few
ratios and shows the contact type at each.

Run: python3 demos/ratio_landscape.py
"""

from equidist import (
    classify_lambda,
    contact_type,
    lambda_landscape,
    scaled_contact_map,
)
from equidist.rationals import Q
from equidist.surfaces import SurfaceJet, SurfacePair

pair = SurfacePair(
    SurfaceJet({(2, 0, 0): Q(1), (0, 3, 0): Q(1), (2, 1, 0): Q(1), (0, 4, 0): Q(1)}, side="m"),
    SurfaceJet(
        {(2, 0, 0): Q(3), (0, 3, 0): Q(4), (1, 2, 0): Q(1, 2), (0, 4, 0): Q(1), (0, 1, 1): Q(1)},
        side="n",
    ),
)

ls = lambda_landscape(pair)
print("special ratios:   ", [str(v) for v in ls.special])
print("degenerate ratio: ", ls.degenerate)
print()

probes = [Q(1, 2), Q(2, 3), Q(3, 4), Q(2), ls.degenerate]
for lam in probes:
    label = classify_lambda(pair, lam)
    ct = contact_type(scaled_contact_map(pair, lam))
    tag = label.case if label.subcase is None else "%s/%s" % (label.case, label.subcase)
    print("lambda = %-5s %-20s contact %s" % (lam, tag, ct))
