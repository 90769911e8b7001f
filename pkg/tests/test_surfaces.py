"""Surface pairs, family construction and contact classification."""

import random

import pytest

from equidist.jetcalc import TruncPoly
from equidist.rationals import Q
from equidist.surfaces import (
    ExcludedRatio,
    SurfaceJet,
    SurfacePair,
    build_family,
    contact_type,
    flip_y,
    pair_from_json,
    pair_to_json,
    scaled_contact_map,
    validate_pair,
)


def simple_pair(**over):
    f = {(2, 0, 0): Q(1), (0, 3, 0): Q(1), (3, 0, 0): Q(1, 2)}
    g = {(2, 0, 0): Q(2), (0, 3, 0): Q(2), (1, 2, 0): Q(1, 3), (0, 1, 1): Q(1)}
    f.update({k: Q(v) for k, v in over.get("f", {}).items()})
    g.update({k: Q(v) for k, v in over.get("g", {}).items()})
    return SurfacePair(SurfaceJet(f, side="m"), SurfaceJet(g, side="n"))


def test_jet_shape_guards():
    with pytest.raises(ValueError):
        SurfaceJet({(1, 0, 0): Q(1)})
    with pytest.raises(ValueError):
        SurfaceJet({(1, 1, 0): Q(1), (2, 0, 0): Q(1)})
    with pytest.raises(ValueError):
        SurfaceJet({(2, 0, 0): Q(1), (0, 0, 1): Q(1)}, side="m")
    # the N side may carry the eps-linear unfolding terms
    SurfaceJet({(2, 0, 0): Q(1), (0, 1, 1): Q(1)}, side="n")


def test_validate_pair():
    rep = validate_pair(simple_pair())
    assert rep.geometry_ok and rep.all_ok
    rep = validate_pair(simple_pair(g={(0, 1, 1): 0}))
    assert rep.geometry_ok and not rep.all_ok
    rep = validate_pair(simple_pair(f={(0, 3, 0): -1}))
    assert not rep.geometry_ok and rep.warnings


def test_flip_y_normalizes_f030():
    pair = flip_y(simple_pair(f={(0, 3, 0): -1}))
    assert pair.f030 == 1
    assert validate_pair(pair).geometry_ok


def test_build_family_matches_direct_evaluation():
    """h(s, u) must equal (1-l) f(s) + l g((u - (1-l)s)/l) pointwise.

    At eps = alpha = 0 nothing is truncated (g has degree <= 4 and the
    chord substitution is linear), so the comparison is exact."""
    pair = simple_pair()
    rng = random.Random(3)
    for lam in (Q(1, 2), Q(2, 3), Q(-1, 4)):
        fam = build_family(pair, lam, order=4)
        h0 = fam.at_params(eps=0, alpha=0)
        for _ in range(10):
            pt = {
                v: Q(rng.randint(-9, 9), rng.randint(1, 5))
                for v in ("s1", "s2", "u1", "u2")
            }
            pt["eps"] = pt["alpha"] = Q(0)
            t1 = (pt["u1"] - (1 - lam) * pt["s1"]) / lam
            t2 = (pt["u2"] - (1 - lam) * pt["s2"]) / lam

            def height(jet, x, y):
                return sum(
                    c * x**i * y**j
                    for (i, j, k), c in jet.coeffs.items()
                    if k == 0
                )

            expect = (1 - lam) * height(pair.m, pt["s1"], pt["s2"]) + lam * height(
                pair.n, t1, t2
            )
            assert h0.evaluate(**pt) == expect


def test_build_family_orders_consistent():
    """The order-4 jet is the degree-<=4 part of the order-6 jet."""
    pair = simple_pair()
    h4 = build_family(pair, Q(2, 5), order=4).h
    h6 = build_family(pair, Q(2, 5), order=6).h
    low = {e: c for e, c in h6.coeffs.items() if sum(e) <= 4}
    assert h4.coeffs == low


def test_build_family_excludes_endpoints():
    for lam in (0, 1):
        with pytest.raises(ExcludedRatio):
            build_family(simple_pair(), Q(lam))


def test_at_params_restricts():
    fam = build_family(simple_pair(), Q(1, 2))
    h0 = fam.at_params(eps=0, alpha=0)
    iv = [h0.vars.index(v) for v in ("eps", "alpha")]
    assert all(e[iv[0]] == 0 and e[iv[1]] == 0 for e in h0.coeffs)


def test_scaled_contact_map_values():
    pair = simple_pair()
    lam = Q(2, 3)
    mu = lam / (lam - 1)
    K = scaled_contact_map(pair, lam)
    x, y = Q(1, 5), Q(-1, 7)

    def height(jet, xx, yy):
        return sum(c * xx**i * yy**j for (i, j, k), c in jet.coeffs.items() if k == 0)

    assert K.evaluate(x=x, y=y, **{v: Q(0) for v in K.vars if v not in ("x", "y")}) == mu * height(
        pair.n, x, y
    ) - height(pair.m, mu * x, mu * y)
    with pytest.raises(ExcludedRatio):
        scaled_contact_map(pair, 1)


def mono(coeffs, order=5):
    return TruncPoly(("x", "y"), order, {k: Q(v) for k, v in coeffs.items()})


def test_contact_type_known_germs():
    assert str(contact_type(mono({(2, 0): 1, (0, 3): 1}))) == "A2"
    assert str(contact_type(mono({(2, 0): 1, (0, 4): -1}))) == "A3"
    assert str(contact_type(mono({(2, 0): 1, (1, 1): 2, (0, 2): 1, (0, 3): 1}))) == "A2"
    # x^3 - 3xy^2: three distinct real root directions
    assert contact_type(mono({(3, 0): 1, (1, 2): -3})).kind == "D4minus"
    # x^3 + 3xy^2: one real root direction
    assert contact_type(mono({(3, 0): 1, (1, 2): 3})).kind == "D4plus"
    assert contact_type(mono({(3, 0): 1})).kind == "MoreDegenerate"
    assert contact_type(mono({(2, 0): 1})).kind == "MoreDegenerate"


def test_contact_type_rotated_quadratic():
    # pure xy quadratic (full-rank Morse germ) via the shear fallback
    assert str(contact_type(mono({(1, 1): 1, (0, 3): 1}))) == "A1"
    assert str(contact_type(mono({(0, 2): 1, (3, 0): 1}))) == "A2"


def test_json_round_trip():
    pair = simple_pair()
    text = pair_to_json(pair)
    back = pair_from_json(text)
    assert back.m.coeffs == pair.m.coeffs
    assert back.n.coeffs == pair.n.coeffs
    assert pair_to_json(back) == text


def test_json_accepts_fraction_strings():
    pair = pair_from_json(
        '{"f": [[2,0,0,"1/3"],[0,3,0,"2"]], "g": [[2,0,0,"1"],[0,3,0,"-1/2"]]}'
    )
    assert pair.f20 == Q(1, 3)
    assert pair.g030 == Q(-1, 2)
