"""Surface-pair data model, family construction and contact analysis.

A surface patch is stored as the jet of its height function: coefficient
(i, j, k) multiplies eps^k * x^i * y^j.  The pair (M at the origin, N at
height 1) is assumed to be in the adapted frame: both base points are
parabolic with asymptotic direction along y, so the only quadratic term
on each side is the x^2 one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .jetcalc import TruncPoly, substitute
from .rationals import Q, rat, rat_str

FAMILY_VARS = ("s1", "s2", "u1", "u2", "eps", "alpha")


class ExcludedRatio(ValueError):
    """lambda in {0, 1} is outside the theory."""


class NotSingular(ValueError):
    pass


class SurfaceJet:
    """Height-function jet of one surface patch."""

    def __init__(self, coeffs, order=4, eps_order=1, side="m"):
        self.order = int(order)
        self.eps_order = int(eps_order)
        self.side = side
        self.coeffs = {}
        for (i, j, k), c in dict(coeffs).items():
            c = rat(c) if isinstance(c, (int, str)) else c
            if not c:
                continue
            if i + j > self.order or k > self.eps_order:
                continue
            self._check_shape(i, j, k)
            self.coeffs[(i, j, k)] = c

    def _check_shape(self, i, j, k):
        if i + j < 2 and k == 0:
            raise ValueError("constant/linear term (%d,%d,%d) breaks the adapted frame" % (i, j, k))
        if i + j == 2 and (i, j) != (2, 0):
            raise ValueError("quadratic term (%d,%d) other than x^2 breaks the parabolic frame" % (i, j))
        if self.side == "m" and k >= 1 and i + j < 2:
            raise ValueError("eps-linear low-order term (%d,%d,%d) is not allowed on the M side" % (i, j, k))

    def get(self, i, j, k=0):
        return self.coeffs.get((i, j, k), Q(0))

    def poly(self, x: TruncPoly, y: TruncPoly, eps=None) -> TruncPoly:
        """Evaluate the jet on polynomial arguments."""
        out = TruncPoly.zero(x.vars, x.order, x.caps)
        for (i, j, k), c in self.coeffs.items():
            if eps is None and k:
                continue
            term = TruncPoly.const(x.vars, x.order, c, x.caps)
            if i:
                term = term * x**i
            if j:
                term = term * y**j
            if k:
                term = term * eps**k
            out = out + term
        return out

    def reparam_y_shear(self, c):
        """The jet of the same surface after the ambient map y -> y + c x."""
        vars = ("x", "y")
        order = self.order
        out = {}
        for k in range(self.eps_order + 1):
            x = TruncPoly.variable("x", vars, order)
            y = TruncPoly.variable("y", vars, order)
            p = TruncPoly.zero(vars, order)
            for (i, j, kk), cc in self.coeffs.items():
                if kk != k:
                    continue
                p = p + TruncPoly.const(vars, order, cc) * x**i * (y + c * x) ** j
            for expo, cc in p.coeffs.items():
                out[(expo[0], expo[1], k)] = out.get((expo[0], expo[1], k), Q(0)) + cc
        return SurfaceJet({e: c for e, c in out.items() if c}, self.order, self.eps_order, self.side)

    def scaled_xy(self, t):
        """Jet after (x, y) -> (t x, t y)."""
        t = rat(t) if isinstance(t, (int, str)) else t
        return SurfaceJet(
            {(i, j, k): c * t ** (i + j) for (i, j, k), c in self.coeffs.items()},
            self.order,
            self.eps_order,
            self.side,
        )

    def scaled_height(self, t):
        t = rat(t) if isinstance(t, (int, str)) else t
        return SurfaceJet(
            {e: c * t for e, c in self.coeffs.items()},
            self.order,
            self.eps_order,
            self.side,
        )


@dataclass
class SurfacePair:
    m: SurfaceJet
    n: SurfaceJet

    @property
    def f20(self):
        return self.m.get(2, 0)

    @property
    def g20(self):
        return self.n.get(2, 0)

    @property
    def f030(self):
        return self.m.get(0, 3)

    @property
    def g030(self):
        return self.n.get(0, 3)


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def geometry_ok(self):
        return all(
            self.checks[k]
            for k in ("m_not_umbilic", "n_not_umbilic", "f030_positive", "g030_nonzero", "supercaustic")
        )

    @property
    def all_ok(self):
        return all(self.checks.values())


def validate_pair(pair: SurfacePair) -> ValidationReport:
    """Check the adapted-frame assumptions and the versality coefficient."""
    rep = ValidationReport()
    rep.checks["m_not_umbilic"] = bool(pair.f20)
    rep.checks["n_not_umbilic"] = bool(pair.g20)
    rep.checks["f030_positive"] = pair.f030 > 0
    rep.checks["g030_nonzero"] = bool(pair.g030)
    # The chord property: with only-x^2 quadratics and no eps-constant
    # terms, the s2-gradient row of the critical-set Jacobian vanishes on
    # the whole axis.  That is a consequence of the jet shape that
    # SurfaceJet enforces, so it is asserted structurally here.
    rep.checks["supercaustic"] = (
        pair.m.get(1, 1) == 0
        and pair.m.get(0, 2) == 0
        and pair.n.get(1, 1) == 0
        and pair.n.get(0, 2) == 0
    )
    rep.checks["versal"] = bool(pair.n.get(0, 1, 1))
    if not rep.checks["versal"]:
        rep.warnings.append("eps-linear y coefficient on N is zero: unfoldings are not versal")
    if not rep.checks["f030_positive"]:
        rep.warnings.append("normalize the pair with flip_y() so the M-side y^3 coefficient is positive")
    return rep


def flip_y(pair: SurfacePair) -> SurfacePair:
    """Apply y -> -y on both surfaces (used to normalize f030 > 0)."""

    def flip(jet):
        return SurfaceJet(
            {(i, j, k): (-c if j % 2 else c) for (i, j, k), c in jet.coeffs.items()},
            jet.order,
            jet.eps_order,
            jet.side,
        )

    return SurfacePair(flip(pair.m), flip(pair.n))


@dataclass
class FamilyJet:
    """Third component h of the unfolded chord-midpoint family.

    The map is (s1,s2,u1,u2,eps,alpha) -> (u1, u2, h); the first two
    components are the identity on (u1, u2) by construction, so only h is
    stored.  lambda = lambda0 + alpha.
    """

    h: TruncPoly
    lambda0: Q

    def at_params(self, **zeros) -> TruncPoly:
        """Restrict parameters (eps and/or alpha) to zero."""
        p = self.h
        idx = [p.vars.index(v) for v in zeros]
        coeffs = {e: c for e, c in p.coeffs.items() if all(e[i] == 0 for i in idx)}
        return TruncPoly(p.vars, p.order, coeffs, p.caps)


def build_family(pair: SurfacePair, lambda0, order=4, caps=None) -> FamilyJet:
    """Unfold the two-point chord map into (u1, u2, h(s,u,eps,alpha)).

    Substitutes t_i = (u_i - (1-lambda) s_i)/lambda with
    lambda = lambda0 + alpha expanded as an exact geometric series in
    alpha, then truncates at the requested order.
    """
    lambda0 = rat(lambda0) if isinstance(lambda0, (int, str)) else lambda0
    if lambda0 == 0 or lambda0 == 1:
        raise ExcludedRatio("lambda must avoid 0 and 1")
    vars = FAMILY_VARS
    s1 = TruncPoly.variable("s1", vars, order, caps)
    s2 = TruncPoly.variable("s2", vars, order, caps)
    u1 = TruncPoly.variable("u1", vars, order, caps)
    u2 = TruncPoly.variable("u2", vars, order, caps)
    eps = TruncPoly.variable("eps", vars, order, caps)
    alpha = TruncPoly.variable("alpha", vars, order, caps)
    one = TruncPoly.const(vars, order, Q(1), caps)

    # 1/(lambda0 + alpha) = sum (-alpha)^k / lambda0^(k+1), exact to order
    inv_lambda = TruncPoly.zero(vars, order, caps)
    for k in range(order + 1):
        inv_lambda = inv_lambda + (-1) ** k * Q(1) / lambda0 ** (k + 1) * alpha**k
    lam = TruncPoly.const(vars, order, lambda0, caps) + alpha
    one_minus_lam = one - lam

    t1 = (u1 - one_minus_lam * s1) * inv_lambda
    t2 = (u2 - one_minus_lam * s2) * inv_lambda
    h = one_minus_lam * pair.m.poly(s1, s2, eps) + lam * pair.n.poly(t1, t2, eps)
    # the lambda * (height 1) offset is a function of the parameters only
    # and is removed by a target translation; drop it with other
    # source-independent terms at the caller's discretion.
    return FamilyJet(h, lambda0)


def scaled_contact_map(pair: SurfacePair, lam, order=4) -> TruncPoly:
    """K(x,y) = mu*g(x,y,0) - f(mu x, mu y, 0), mu = lambda/(lambda-1)."""
    lam = rat(lam) if isinstance(lam, (int, str)) else lam
    if lam == 0 or lam == 1:
        raise ExcludedRatio("lambda must avoid 0 and 1")
    mu = lam / (lam - 1)
    vars = ("x", "y")
    x = TruncPoly.variable("x", vars, order)
    y = TruncPoly.variable("y", vars, order)
    return mu * pair.n.poly(x, y) - pair.m.poly(mu * x, mu * y)


@dataclass
class ContactType:
    kind: str  # "Ak" | "D4plus" | "D4minus" | "MoreDegenerate"
    k: int | None = None

    def __str__(self):
        return "A%d" % self.k if self.kind == "Ak" else self.kind


def contact_type(K: TruncPoly) -> ContactType:
    """Singularity type of a function germ with zero 1-jet.

    Corank 1 (nonzero quadratic part): complete the square and read the
    lowest surviving pure power of the other variable -> A_k.  Corank 2:
    classify the cubic part by the discriminant of the binary cubic.
    """
    if K.graded_part(1):
        raise NotSingular("nonzero linear part")
    j2 = K.graded_part(2)
    if j2:
        return _corank1_type(K, j2)
    c3 = K.graded_part(3)
    a = c3.monomial_coeff((3, 0))
    b = c3.monomial_coeff((2, 1))
    c = c3.monomial_coeff((1, 2))
    d = c3.monomial_coeff((0, 3))
    disc = (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )
    if disc > 0:
        return ContactType("D4minus")
    if disc < 0:
        return ContactType("D4plus")
    return ContactType("MoreDegenerate")


def _corank1_type(K: TruncPoly, j2: TruncPoly):
    from .jetcalc import DegenerateSquare, complete_square

    # pick the square variable: the quadratic form is rank >= 1; rotate
    # x <-> y or shear if needed so x^2 has a nonzero coefficient
    if not j2.monomial_coeff((2, 0)):
        if j2.monomial_coeff((0, 2)):
            K = _swap_xy(K)
        else:
            # pure xy quadratic: y -> x + y makes the x^2 term appear
            vars = K.vars
            x = TruncPoly.variable("x", vars, K.order)
            y = TruncPoly.variable("y", vars, K.order)
            K = substitute(K, {"y": x + y})
    try:
        reduced, _ = complete_square(K, "x")
    except DegenerateSquare:
        return ContactType("MoreDegenerate")
    rest = reduced._like(
        {e: c for e, c in reduced.coeffs.items() if e != (2, 0)}
    )
    if not rest:
        return ContactType("MoreDegenerate")
    degree = rest.min_degree()
    return ContactType("Ak", k=degree - 1)


def _swap_xy(K: TruncPoly) -> TruncPoly:
    return TruncPoly(K.vars, K.order, {(e[1], e[0]): c for e, c in K.coeffs.items()}, K.caps)


# ---------------------------------------------------------------------------
# JSON IO


def pair_from_json(text: str) -> SurfacePair:
    """Parse {"f": [[i,j,k,coeff],...], "g": [...]}; coefficients are
    integers, "p/q" strings, or exact decimal strings."""
    data = json.loads(text)
    def side(key, tag):
        rows = data.get(key, [])
        coeffs = {}
        for row in rows:
            i, j, k, c = row
            coeffs[(int(i), int(j), int(k))] = rat(c)
        order = max((i + j for (i, j, _) in coeffs), default=4)
        eps_order = max((k for (_, _, k) in coeffs), default=1)
        return SurfaceJet(coeffs, max(order, 4), max(eps_order, 1), tag)

    return SurfacePair(side("f", "m"), side("g", "n"))


def pair_to_json(pair: SurfacePair) -> str:
    def rows(jet):
        return [
            [i, j, k, rat_str(c)]
            for (i, j, k), c in sorted(jet.coeffs.items())
        ]

    return json.dumps({"f": rows(pair.m), "g": rows(pair.n)}, indent=2)
