"""Degenerate-ratio engine: normal form reduction, cone regimes,
cuspidal-edge / sheet / self-intersection-branch counts, the nearby
generic subcase, and the ten-class table.

The normal-form third component is

    h = s1*u1 + s1^3 + s2^2*u2 + s2*u2^2 + b*s1^2*s2 + c*s1^2*u2
        + d*s1*s2^2 + e*s2^3 + s1^4 + p*s2 + q*s1^2

and every count below is a function of (b, c, d, e) with unfolding
parameters (p, q) at the origin unless stated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebraic import real_root_fields
from .jetcalc import TruncPoly, UniPoly, resultant, substitute
from .rationals import Q, rat
from .surfaces import SurfacePair, build_family


class MoreDegenerate(ValueError):
    """A genericity flag failed; the classification does not apply."""


class DenominatorDegenerate(ValueError):
    pass


@dataclass
class DegenNormalForm:
    b: Q
    c: Q
    d: Q
    e: Q
    flags: dict = field(default_factory=dict)
    precision: int = 0
    source: object = None  # exact pre-rounding data for re-runs

    def __post_init__(self):
        conv = lambda v: rat(v) if isinstance(v, (int, str)) else v
        self.b, self.c, self.d, self.e = map(conv, (self.b, self.c, self.d, self.e))
        self.flags.setdefault("s1cubed_nonzero", True)
        self.flags.setdefault("s1fourth_nonzero", True)
        self.flags.setdefault("T_nondegenerate", bool(self.d**2 - self.b * (3 * self.e - 1)))
        self.flags.setdefault("e_admissible", self.e != 0 and self.e != Q(1, 3))

    def tuple(self):
        return (self.b, self.c, self.d, self.e)


@dataclass
class DegenInvariants:
    cusp_edges: int
    sheets: int
    branches: int
    nearby: str
    table_class: str

    def to_dict(self):
        return {
            "cusp_edges": self.cusp_edges,
            "sheets": self.sheets,
            "self_int": self.branches,
            "subcase": self.nearby,
            "class": self.table_class,
        }


# (class, cusp edges, self-int branches, subcase, b, c, d, e) as published
TABLE1 = [
    ("I", 0, 0, "PosDef", Q(8), Q(4), Q(-3), Q(1)),
    ("II", 0, 1, "Indef", Q(8), Q(-4), Q(-3), Q(1, 6)),
    ("III", 0, 2, "NegDef", Q(8), Q(-4), Q(-3), Q(-1)),
    ("IV", 2, 0, "Indef", Q(-13), Q(6), Q(-3), Q(-5)),
    ("V", 2, 1, "NegDef", Q(1), Q(2), Q(3), Q(-1)),
    ("VI", 2, 2, "Indef", Q(8), Q(4), Q(-3), Q(1, 6)),
    ("VII", 2, 3, "NegDef", Q(-13), Q(-6), Q(1), Q(1, 6)),
    ("VIII", 2, 3, "Indef", Q(-8), Q(4), Q(1), Q(1, 6)),
    ("IX", 4, 1, "Indef", Q(-8), Q(4), Q(-3), Q(-1)),
    ("X", 4, 3, "Indef", Q(-8), Q(6), Q(-3), Q(10)),
]

_SUBCASE_SIGNS = {"PosDef": "++", "NegDef": "--", "Indef": "+-"}


# ---------------------------------------------------------------------------
# Reduction from a surface pair


def reduce_degenerate(pair: SurfacePair, precision: int = 128) -> DegenNormalForm:
    """Reduce a pair at its degenerate ratio to the (b,c,d,e) form.

    Steps: shear y -> y + c*x (ambient, both surfaces) so the N-side
    x*y^2 cubic dies — this is what makes a single s2 -> s2 + a*u2 kill
    both obstructing cubic monomials afterwards; build the family at
    the degenerate ratio; confine u1 to the monomial s1*u1; kill
    s1*s2*u2 and s1*u2^2; then scale the five unit monomials to 1.
    The s2-direction scale is a real cube root, embedded as a rational
    at the requested precision (in bits); b, c, d carry that rounding,
    e is exact.
    """
    f20, g20 = pair.f20, pair.g20
    if f20 == g20:
        raise MoreDegenerate("no degenerate ratio: equal x^2 coefficients")
    shear = -pair.n.get(1, 2) / (3 * pair.g030)
    sheared = SurfacePair(pair.m.reparam_y_shear(shear), pair.n.reparam_y_shear(shear))
    lam = g20 / (g20 - f20)

    vars = ("s1", "s2", "u1", "u2")
    order = 4
    fam = build_family(sheared, lam, order=order)
    h = fam.at_params(eps=0, alpha=0)
    # re-home to the four live variables
    coeffs = {e[:4]: c for e, c in h.coeffs.items()}
    h = TruncPoly(vars, order, coeffs)
    h = h.drop_pure(("u1", "u2"))

    h, a_unit = _confine_u1(h)

    # after the shear the two obstructing cubic monomials are already
    # gone; the s2 shift is therefore trivial, but solve it anyway so a
    # slightly off-frame input fails loudly rather than silently.
    p4 = h.monomial_coeff((1, 2, 0, 0))
    p5 = h.monomial_coeff((1, 1, 0, 1))
    p6 = h.monomial_coeff((1, 0, 0, 2))
    if p5 or p6:
        if not p4 or p5 * p5 != 4 * p4 * p6:
            raise MoreDegenerate("cubic s1-part is not a perfect square after shearing")
        s2v = TruncPoly.variable("s2", vars, order)
        u2v = TruncPoly.variable("u2", vars, order)
        h = substitute(h, {"s2": s2v + (-p5 / (2 * p4)) * u2v})

    B = h.monomial_coeff((0, 2, 0, 1))
    C = h.monomial_coeff((0, 1, 0, 2))
    exp_B = 3 * pair.g030 * f20**2 / g20**2
    exp_C = 3 * f20 * pair.g030 * (g20 - f20) / g20**2
    if B != exp_B or C != exp_C:
        raise MoreDegenerate("unit-coefficient identities failed: input violates the adapted frame")
    A3 = h.monomial_coeff((3, 0, 0, 0))
    D4 = h.monomial_coeff((4, 0, 0, 0))
    flags = {
        "s1cubed_nonzero": bool(A3),
        "s1fourth_nonzero": bool(D4),
    }
    if not A3:
        raise MoreDegenerate("s1cubed_nonzero")
    if not D4:
        raise MoreDegenerate("s1fourth_nonzero")

    # scaling: s1 *= alpha, s2 *= beta, u1 *= d1, u2 *= d2, target *= csc
    alpha = A3 / D4
    csc = D4**3 / A3**4
    beta3 = C / (csc * B**2)
    d2_of = lambda beta: 1 / (csc * B * beta**2)

    raw_b = h.monomial_coeff((2, 1, 0, 0))
    raw_c = h.monomial_coeff((2, 0, 0, 1))
    raw_d = h.monomial_coeff((1, 2, 0, 0))
    raw_e = h.monomial_coeff((0, 3, 0, 0))

    e_exact = raw_e * csc * beta3
    beta = _rational_cbrt(beta3, precision)
    b_val = raw_b * csc * alpha**2 * beta
    c_val = raw_c * csc * alpha**2 * d2_of(beta)
    d_val = raw_d * csc * alpha * beta**2

    nf = DegenNormalForm(
        b_val,
        c_val,
        d_val,
        e_exact,
        flags=flags,
        precision=precision,
        source={
            "raw": (raw_b, raw_c, raw_d, raw_e),
            "alpha": alpha,
            "csc": csc,
            "B": B,
            "C": C,
            "beta3": beta3,
            "a_unit": a_unit,
        },
    )
    return nf


def with_precision(nf: DegenNormalForm, precision: int) -> DegenNormalForm:
    """Re-round a reduced form's cube-root embedding at new precision."""
    s = nf.source
    if not s:
        return nf
    beta = _rational_cbrt(s["beta3"], precision)
    raw_b, raw_c, raw_d, raw_e = s["raw"]
    alpha, csc, B = s["alpha"], s["csc"], s["B"]
    return DegenNormalForm(
        raw_b * csc * alpha**2 * beta,
        raw_c * csc * alpha**2 / (csc * B * beta**2),
        raw_d * csc * alpha * beta**2,
        nf.e,
        flags=dict(nf.flags),
        precision=precision,
        source=s,
    )


def _confine_u1(h: TruncPoly):
    """Redefine s1 so u1 appears only in the monomial s1*u1."""
    vars = h.vars
    iu1 = vars.index("u1")
    expo_s1u1 = (1, 0, 1, 0)
    a = h.monomial_coeff(expo_s1u1)
    if not a:
        raise MoreDegenerate("vanishing s1*u1 coefficient")
    s1v = TruncPoly.variable("s1", vars, h.order)
    for _ in range(h.order + 2):
        h = h.drop_pure(("u1", "u2"))
        off = h._like(
            {e: c for e, c in h.coeffs.items() if e[iu1] >= 1 and e != expo_s1u1}
        )
        if not off:
            break
        over_u1 = h._like(
            {
                (e[0], e[1], e[2] - 1, e[3]): c
                for e, c in off.coeffs.items()
            }
        )
        h = substitute(h, {"s1": s1v - Q(1) / a * over_u1})
    else:
        raise MoreDegenerate("u1 confinement did not converge")
    return h.drop_pure(("u1", "u2")), a


def _rational_cbrt(t, precision):
    """Rational approximation of the real cube root of t, to ~precision
    bits; exact when t is a perfect rational cube."""
    if not t:
        return Q(0)
    sign = 1 if t > 0 else -1
    tt = abs(t)
    poly = UniPoly([-tt, 0, 0, 1])
    (lo, hi), = poly.isolate_real_roots()
    width = (1 + tt) / Q(2) ** precision
    lo, hi = poly.refine_root(lo, hi, width)
    mid = (lo + hi) / 2
    # snap to an exact cube root when there is one
    for cand in (lo, hi, mid):
        if cand**3 == tt:
            return sign * cand
    from .rationals import approx_rational

    return sign * approx_rational(lo, hi, precision + 8)


# ---------------------------------------------------------------------------
# Cone regimes


def cone_regime(nf: DegenNormalForm):
    """Plotting regime of the singular-set quadric and its k-parameter.

    Regimes: PointOnly (cone is a single point), ParamX1X2, ParamX1S2,
    ParamX2S2 per the sign pattern of (b, k); for b = 0 the quadric is
    classified directly (it is never a point) and solved for s1.
    """
    b, d, e = nf.b, nf.d, nf.e
    if not nf.flags["T_nondegenerate"]:
        raise MoreDegenerate("T_nondegenerate")
    if b == 0:
        return ("ParamSolveS1", None)
    k = (3 * b * e - b - d**2) / b
    if b > 0:
        if k > 0:
            return ("PointOnly", k)
        return ("ParamX1X2", k)
    if k > 0:
        return ("ParamX1S2", k)
    return ("ParamX2S2", k)


# ---------------------------------------------------------------------------
# Cuspidal-edge count


def singular_cone(b, c, d, e, vars=("s1", "s2", "u2"), order=8):
    """gamma = (s2+u2)^2 + b s1^2 + 2 d s1 s2 + (3e-1) s2^2."""
    s1 = TruncPoly.variable(vars[0], vars, order)
    s2 = TruncPoly.variable(vars[1], vars, order)
    u2 = TruncPoly.variable(vars[2], vars, order)
    return (s2 + u2) ** 2 + b * s1**2 + 2 * d * s1 * s2 + (3 * e - 1) * s2**2


def cusp_conic(b, c, d, e, vars=("s1", "s2", "u2"), order=8):
    """The second conic whose intersection with the cone counts edges."""
    s1 = TruncPoly.variable(vars[0], vars, order)
    s2 = TruncPoly.variable(vars[1], vars, order)
    u2 = TruncPoly.variable(vars[2], vars, order)
    return (
        (b**2 - 3 * d) * s1**2
        + (b * d - 9 * e) * s1 * s2
        - (c * d + 3) * s1 * u2
        + (d**2 - 3 * b * e) * s2**2
        - (3 * c * e + b) * s2 * u2
        - c * u2**2
    )


def cusp_edge_count(nf: DegenNormalForm):
    """Number of cuspidal edges through the origin: 0, 2 or 4.

    Counts real projective intersections of the two conics: in the
    chart u2 = 1, eliminate s1 by resultant and count distinct real
    roots of the resulting quartic; then add common roots on the
    u2 = 0 line, which that chart cannot see.  Returns
    (count, tangential_flag).
    """
    b, c, d, e = nf.tuple()
    if not nf.flags["T_nondegenerate"]:
        raise MoreDegenerate("T_nondegenerate")
    vars = ("m", "n", "w")
    gamma = singular_cone(b, c, d, e, vars=vars)
    conic = cusp_conic(b, c, d, e, vars=vars)
    w1 = {"w": TruncPoly.const(vars, 8, Q(1))}
    g1 = substitute(gamma, w1, allow_const=True)
    c1 = substitute(conic, w1, allow_const=True)
    res = resultant(g1, c1, "m")
    quartic = res.to_unipoly()
    if quartic.is_zero():
        raise MoreDegenerate("conics share a component")
    count = 0
    tangential = False
    for lo, hi in quartic.isolate_real_roots():
        if quartic.multiplicity_at_interval(lo, hi) > 1:
            tangential = True
        if _chart_root_is_real_pair(g1, c1, quartic, lo, hi):
            count += 1
    count += _line_at_infinity_points(b, c, d, e)
    return count, tangential


def _chart_root_is_real_pair(g1, c1, quartic, lo, hi):
    """Confirm a real resultant root corresponds to a real common point.

    The resultant vanishes where the conics share a root in m over the
    complexes; for a real intersection the shared m must be real.  We
    check numerically at a refined root and accept when the residual of
    the best real m is small at matching scale."""
    lo, hi = quartic.refine_root(lo, hi, Q(1, 10**24))
    n0 = float((lo + hi) / 2)
    # gamma in chart: quadratic in m
    a2, a1, a0 = _m_quadratic(g1, n0)
    b2, b1, b0 = _m_quadratic(c1, n0)
    import math

    candidates = []
    for (p2, p1, p0) in ((a2, a1, a0), (b2, b1, b0)):
        if abs(p2) > 1e-300:
            disc = p1 * p1 - 4 * p2 * p0
            if disc >= -1e-9 * (abs(p1 * p1) + abs(4 * p2 * p0) + 1e-30):
                r = math.sqrt(max(disc, 0.0))
                candidates += [(-p1 + r) / (2 * p2), (-p1 - r) / (2 * p2)]
        elif abs(p1) > 1e-300:
            candidates.append(-p0 / p1)
    if not candidates:
        return False
    def resid(m):
        s = (a2 * m * m + a1 * m + a0) ** 2 + (b2 * m * m + b1 * m + b0) ** 2
        return s

    scale = sum(abs(v) for v in (a2, a1, a0, b2, b1, b0)) + 1.0
    return min(resid(m) for m in candidates) < (1e-8 * scale) ** 2


def _m_quadratic(poly, n0):
    """Float coefficients (m^2, m, 1) of a chart conic at n = n0."""
    out = [0.0, 0.0, 0.0]
    for expo, cc in poly.coeffs.items():
        out[2 - expo[0]] += float(cc) * n0 ** expo[1]
    return out


def _line_at_infinity_points(b, c, d, e):
    """Common real projective roots of the two conics on u2 = 0."""
    g = UniPoly([3 * e - 1, 2 * d, b])  # gamma(s1, 1, 0) in s1
    f = UniPoly([d**2 - 3 * b * e, b * d - 9 * e, b**2 - 3 * d])
    gcd = g.gcd(f)
    count = 0
    if gcd.degree >= 1:
        count += gcd.count_real_roots()
    # the direction [1:0:0]
    if b == 0 and b**2 - 3 * d == 0:
        count += 1
    return count


# ---------------------------------------------------------------------------
# Sheets


def sheet_cubic(nf: DegenNormalForm) -> UniPoly:
    return UniPoly([Q(1), nf.b, nf.d, nf.e])


def sheet_discriminant(nf: DegenNormalForm):
    b, d, e = nf.b, nf.d, nf.e
    return 27 * e**2 + 2 * b * (2 * b**2 - 9 * d) * e + d**2 * (4 * d - b**2)


def sheet_count(nf: DegenNormalForm):
    """(1 or 3, real roots of the sheet cubic); both computed, must agree."""
    disc = sheet_discriminant(nf)
    if not disc:
        raise MoreDegenerate("sheet discriminant vanishes")
    if not nf.flags["e_admissible"]:
        raise MoreDegenerate("e_admissible")
    sheets = 1 if disc > 0 else 3
    cubic = sheet_cubic(nf)
    nroots = cubic.count_real_roots()
    if nroots != sheets:
        raise AssertionError("sheet discriminant disagrees with direct root count")
    return sheets, cubic


# ---------------------------------------------------------------------------
# The self-intersection polynomial L(k0)


class _Frac:
    """num / (y1^a * K^j * D^l) with num a TruncPoly over the root field."""

    __slots__ = ("num", "a", "j", "l", "ctx")

    def __init__(self, num, a, j, l, ctx):
        self.num, self.a, self.j, self.l, self.ctx = num, a, j, l, ctx

    def _lift(self, other):
        if isinstance(other, _Frac):
            return other
        if not isinstance(other, TruncPoly):
            other = TruncPoly.const(self.num.vars, self.num.order, other, self.num.caps)
        return _Frac(other, 0, 0, 0, self.ctx)

    def __add__(self, other):
        other = self._lift(other)
        a = max(self.a, other.a)
        j = max(self.j, other.j)
        l = max(self.l, other.l)
        return _Frac(
            self.ctx.raise_num(self.num, a - self.a, j - self.j, l - self.l)
            + self.ctx.raise_num(other.num, a - other.a, j - other.j, l - other.l),
            a,
            j,
            l,
            self.ctx,
        )

    __radd__ = __add__

    def __neg__(self):
        return _Frac(-self.num, self.a, self.j, self.l, self.ctx)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return _Frac(self.num * other.num, self.a + other.a, self.j + other.j, self.l + other.l, self.ctx)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self._lift(1)
        for _ in range(n):
            out = out * self
        return out


class _ChainContext:
    """Shared data for one L(k0) computation over Q or Q[k0]."""

    def __init__(self, bcde, k0_scalar, ring_one, z_order, pq: bool):
        b, c, d, e = bcde
        self.vars = ("y1", "z", "p", "q")
        y1_cap = 16
        pq_cap = 2 if pq else 0
        self.caps = (y1_cap, z_order, pq_cap, pq_cap)
        self.order = y1_cap + z_order + 2 * pq_cap
        self.one = ring_one
        conv = lambda v: ring_one * v
        self.b, self.c, self.d, self.e = map(conv, (b, c, d, e))
        self.k0 = k0_scalar
        z = TruncPoly.variable("z", self.vars, self.order, self.caps)
        self.K = z + TruncPoly.const(self.vars, self.order, self.k0, self.caps)
        self.D = (
            TruncPoly.const(self.vars, self.order, -self.c * self.d, self.caps)
            + (self.b - 3 * self.c * self.e) * self.K
            + self.d * self.K * self.K
        )
        self.D0 = self.D.scalar()

    def var(self, name):
        return TruncPoly.variable(name, self.vars, self.order, self.caps)

    def const(self, v):
        return TruncPoly.const(self.vars, self.order, v, self.caps)

    def raise_num(self, num, da, dj, dl):
        out = num
        if da:
            out = out * self.var("y1") ** da
        for _ in range(dj):
            out = out * self.K
        for _ in range(dl):
            out = out * self.D
        return out

    def divide_y1(self, num, m):
        iy = 0
        out = {}
        for expo, cc in num.coeffs.items():
            if expo[iy] < m:
                raise ArithmeticError("numerator not divisible by y1^%d" % m)
            out[(expo[iy] - m,) + expo[1:]] = cc
        return num._like(out)

    def divide_series_z(self, num, den):
        """Exact-as-series division by a z-only polynomial with an
        invertible constant term."""
        iz = 1
        d0 = den.scalar()
        dcoeffs = {}
        for expo, cc in den.coeffs.items():
            if any(expo[i] for i in (0, 2, 3)):
                raise ValueError("denominator must be z-only")
            dcoeffs[expo[iz]] = cc
        zmax = self.caps[iz]
        # bucket numerator by z-degree
        buckets = [dict() for _ in range(zmax + 1)]
        for expo, cc in num.coeffs.items():
            buckets[expo[iz]][(expo[0], expo[2], expo[3])] = cc
        out_buckets = [dict() for _ in range(zmax + 1)]
        inv0 = self._inv(d0)
        for i in range(zmax + 1):
            acc = dict(buckets[i])
            for k, dk in dcoeffs.items():
                if k == 0 or k > i:
                    continue
                for rest, qc in out_buckets[i - k].items():
                    v = acc.get(rest, 0) - dk * qc
                    if v:
                        acc[rest] = v
                    else:
                        acc.pop(rest, None)
            for rest, vc in acc.items():
                out_buckets[i][rest] = vc * inv0
        out = {}
        for i, bucket in enumerate(out_buckets):
            for (a, pp, qq), cc in bucket.items():
                if cc:
                    out[(a, i, pp, qq)] = cc
        return num._like(out)

    @staticmethod
    def _inv(v):
        if hasattr(v, "inverse"):
            return v.inverse()
        return 1 / v


def compute_L(nf: DegenNormalForm, root, z_order=14, with_pq=True) -> TruncPoly:
    """The self-intersection polynomial L(k0) in (y1, z, p, q).

    root is either an exact rational root of the sheet cubic or a pair
    (field, isolating_interval) from the algebraic machinery.  The
    returned polynomial has coefficients in the corresponding ring.
    """
    if isinstance(root, tuple) and len(root) == 2 and hasattr(root[0], "generator"):
        field, _ = root
        one = field.one()
        k0 = field.generator()
    else:
        one = Q(1)
        k0 = rat(root) if isinstance(root, (int, str)) else root
    ctx = _ChainContext(nf.tuple(), k0, one, z_order, with_pq)
    if not ctx.D0:
        raise DenominatorDegenerate("D(k0) = 0")

    b, c, d, e = ctx.b, ctx.c, ctx.d, ctx.e
    y1 = ctx.var("y1")
    pvar = ctx.var("p") if with_pq else ctx.const(0)
    qvar = ctx.var("q") if with_pq else ctx.const(0)
    K, D = ctx.K, ctx.D

    x1 = Q(-1, 4) * (e * K**3 + d * K**2 + b * K + ctx.const(1))
    y2 = K * y1

    frac = lambda num, a=0, j=0, l=0: _Frac(num, a, j, l, ctx)
    x2_num = (
        b * c * x1 * y1**2
        + c * d * x1 * y1 * y2
        - b * x1 * y2**2
        - 6 * x1**2 * y1 * y2
        - 2 * y1**3 * y2
        - 3 * x1 * y1 * y2
        - qvar * y1 * y2
    )
    x2 = frac(x2_num, 2, 0, 1)  # / (y1^2 * D)

    u2_num = -(frac((b * x1 * y1 + d * x1 * y2)) * frac(ctx.raise_num(ctx.const(1), 2, 0, 1))
               + (d * frac(y1) + 3 * e * frac(y2)) * frac(x2_num))
    u2 = _Frac(u2_num.num, 3, 1, 1, ctx)  # / (y1^3 * K * D)
    if u2_num.a or u2_num.j or u2_num.l:
        raise AssertionError("unexpected denominator bookkeeping in u2")

    s1 = frac(x1 + y1)
    t1 = frac(x1 - y1)
    s2 = x2 + frac(y2)
    t2 = x2 - frac(y2)

    def u1_of(a1, a2):
        return (
            -2 * b * a1 * a2
            - 2 * c * a1 * u2
            - d * a2**2
            - 3 * a1**2
            - 4 * a1**3
            - 2 * frac(qvar) * a1
        )

    def h_of(a1, a2, w1):
        return (
            a1 * w1
            + a1**3
            + a2**2 * u2
            + a2 * u2**2
            + b * a1**2 * a2
            + c * a1**2 * u2
            + d * a1 * a2**2
            + e * a2**3
            + a1**4
            + frac(pvar) * a2
            + frac(qvar) * a1**2
        )

    si2 = h_of(s1, s2, u1_of(s1, s2)) - h_of(t1, t2, u1_of(t1, t2))

    # L = 32 * D^2 * SI2' / (y1 * K)
    num = si2.num
    num = ctx.divide_y1(num, si2.a + 1)
    ksingle = ctx.K
    for _ in range(si2.j + 1):
        num = ctx.divide_series_z(num, ksingle)
    if si2.l > 2:
        for _ in range(si2.l - 2):
            num = ctx.divide_series_z(num, ctx.D)
    else:
        for _ in range(2 - si2.l):
            num = num * ctx.D
    return 32 * num


@dataclass
class LStructure:
    y1_powers: set
    linear_ok: bool
    quadratic_ok: bool
    z_degree: int
    z14_expected: bool


def check_L_structure(L: TruncPoly, nf: DegenNormalForm, full_order: bool) -> LStructure:
    """Verify the structural facts about L used downstream."""
    iy, iz, ip, iq = 0, 1, 2, 3
    y1_powers = {e[iy] for e in L.coeffs if e[iy]}
    lin_bad = [
        e for e, c in L.coeffs.items() if sum(e) == 1 and e[ip] != 1
    ]
    quad_allowed = {(2, 0, 0, 0), (0, 2, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 0, 2)}
    quad_bad = [e for e in L.coeffs if sum(e) == 2 and e not in quad_allowed]
    zdeg = max((e[iz] for e in L.coeffs), default=0)
    z14_ok = True
    if full_order:
        expected = 27 * nf.e**5 * (3 * nf.e - 1)
        got = L.monomial_coeff((0, 14, 0, 0))
        z14_ok = got == expected
    return LStructure(
        y1_powers=y1_powers,
        linear_ok=not lin_bad,
        quadratic_ok=not quad_bad,
        z_degree=zdeg,
        z14_expected=z14_ok,
    )


# ---------------------------------------------------------------------------
# Branch count and classification


def sheet_roots(nf: DegenNormalForm):
    """Real roots of the sheet cubic as (kind, payload) descriptors."""
    cubic = sheet_cubic(nf)
    rats, alg = real_root_fields(cubic)
    out = [("rational", r) for r in rats]
    out += [("algebraic", pair) for pair in alg]
    return out


def branch_count(nf: DegenNormalForm):
    """Number of self-intersection branches at p = q = 0.

    One candidate branch per real sheet; the branch is real exactly when
    the 2-jet c0*y1^2 + c2*z^2 of L0(k0) is indefinite (c0*c2 < 0), with
    both signs certified exactly in the root's field.
    """
    count = 0
    details = []
    for kind, payload in sheet_roots(nf):
        if kind == "rational":
            L = compute_L(nf, payload, z_order=3, with_pq=False)
            c0 = L.monomial_coeff((2, 0, 0, 0))
            c2 = L.monomial_coeff((0, 2, 0, 0))
            s0 = (c0 > 0) - (c0 < 0)
            s2 = (c2 > 0) - (c2 < 0)
        else:
            field, interval = payload
            L = compute_L(nf, (field, interval), z_order=3, with_pq=False)
            c0 = L.monomial_coeff((2, 0, 0, 0))
            c2 = L.monomial_coeff((0, 2, 0, 0))
            zero = field.zero()
            s0 = c0.sign_at_root(interval) if isinstance(c0, type(zero)) else 0
            s2 = c2.sign_at_root(interval) if isinstance(c2, type(zero)) else 0
        if s0 == 0 or s2 == 0:
            raise MoreDegenerate("degenerate 2-jet of L0 at a sheet root")
        real_branch = s0 * s2 < 0
        details.append((kind, real_branch))
        if real_branch:
            count += 1
    return count, details


def nearby_subcase(nf: DegenNormalForm) -> str:
    """Generic subcase reached by moving the ratio slightly off the
    degenerate value (independent of the direction)."""
    b, d, e = nf.b, nf.d, nf.e
    if not nf.flags["e_admissible"]:
        raise MoreDegenerate("e_admissible")
    t = d**2 + b - 3 * b * e
    if not t:
        raise MoreDegenerate("boundary: d^2 + b - 3be = 0")
    if e > Q(1, 3) and t < 0:
        return "PosDef"
    if e < Q(1, 3) and e * t < 0:
        return "NegDef"
    if e * t > 0:
        return "Indef"
    raise MoreDegenerate("subcase conditions exhausted")


def classify_class(nf: DegenNormalForm) -> DegenInvariants:
    """Assemble all invariants and match against the published table."""
    edges, _ = cusp_edge_count(nf)
    sheets, _ = sheet_count(nf)
    branches, _ = branch_count(nf)
    nearby = nearby_subcase(nf)
    table_class = "Unlisted"
    for name, tedges, tbranch, tsub, *_ in TABLE1:
        if (tedges, tbranch, tsub) == (edges, branches, nearby):
            table_class = name
            break
    return DegenInvariants(edges, sheets, branches, nearby, table_class)


def table1_report():
    """Recompute the table; one row dict per class with pass/fail cells."""
    rows = []
    for name, tedges, tbranch, tsub, b, c, d, e in TABLE1:
        nf = DegenNormalForm(b, c, d, e)
        edges, _ = cusp_edge_count(nf)
        branches, _ = branch_count(nf)
        nearby = nearby_subcase(nf)
        sheets, _ = sheet_count(nf)
        rows.append(
            {
                "class": name,
                "b": str(b),
                "c": str(c),
                "d": str(d),
                "e": str(e),
                "cusp_edges": edges,
                "self_int": branches,
                "subcase": _SUBCASE_SIGNS[nearby],
                "sheets": sheets,
                "expected": {
                    "cusp_edges": tedges,
                    "self_int": tbranch,
                    "subcase": _SUBCASE_SIGNS[tsub],
                },
                "pass": (edges, branches, nearby) == (tedges, tbranch, tsub),
            }
        )
    return rows
