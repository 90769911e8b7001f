"""Affine equidistants of surface-pair families near a degenerate chord.

Exact jet algebra reduces a surface pair to the published normal forms;
the classification modules compute the case/subcase structure, the
special-ratio transition loci and the ten-class degenerate table; the
mesh module extracts plot-ready surfaces and feature curves.
"""

from .classify import (
    CaseLabel,
    LambdaLandscape,
    a3_condition,
    classify_lambda,
    gauss_tangency,
    lambda_landscape,
    q_invariant,
    r_invariant,
)
from .degen2 import (
    DegenInvariants,
    DegenNormalForm,
    MoreDegenerate,
    branch_count,
    classify_class,
    compute_L,
    cone_regime,
    cusp_edge_count,
    nearby_subcase,
    reduce_degenerate,
    sheet_count,
    table1_report,
)
from .jetcalc import TruncPoly, UniPoly, complete_square, resultant, substitute
from .mesh import GridSpec, Mesh, extract_degen, extract_generic, feature_curves, sweep
from .rationals import Q, rat
from .special12 import PlaneLoci, SpecialFamily, cusp_locus, evaluate_special, selfint_locus
from .surfaces import (
    FamilyJet,
    SurfaceJet,
    SurfacePair,
    build_family,
    contact_type,
    pair_from_json,
    pair_to_json,
    scaled_contact_map,
    validate_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
