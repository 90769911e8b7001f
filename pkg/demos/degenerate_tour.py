"""Tour of the degenerate-ratio machinery for one table row.

Takes the class IX parameters, prints every invariant the package can
compute for them, cross-checks the algebraic counts against the float
feature tracer, and writes a mesh with its feature curves to
demos/out/.

Run: python3 demos/degenerate_tour.py
"""

import os

from equidist import (
    DegenNormalForm,
    branch_count,
    classify_class,
    cone_regime,
    cusp_edge_count,
    sheet_count,
)
from equidist.mesh import GridSpec, degen_feature_counts, extract_degen, features_to_csv, mesh_to_obj
from equidist.rationals import Q

nf = DegenNormalForm(Q(-8), Q(4), Q(-3), Q(-1))  # class IX

print("cone regime:      ", cone_regime(nf))
print("sheets:           ", sheet_count(nf)[0])
print("cusp edges:       ", cusp_edge_count(nf)[0])
print("self-int branches:", branch_count(nf)[0])
print("classification:   ", classify_class(nf).to_dict())
print("numeric recount:  ", degen_feature_counts(nf))
print()

grid = GridSpec(ranges=((-0.05, 0.05), (-0.05, 0.05)), res=(96, 96))
mesh = extract_degen(nf, 0.0, 0.0, grid)
os.makedirs("demos/out", exist_ok=True)
with open("demos/out/class_ix.obj", "w") as fh:
    fh.write(mesh_to_obj(mesh, "class_ix"))
with open("demos/out/class_ix_features.csv", "w") as fh:
    fh.write(features_to_csv(mesh))
print(
    "wrote demos/out/class_ix.obj (%d vertices, %d faces, %d feature polylines)"
    % (len(mesh.vertices), len(mesh.faces), len(mesh.features))
)
