"""Ratio landscape and case/subcase classification for a surface pair.

The chord ratio lambda is classified as Generic (with a definite /
indefinite subcase), Special (the two A3-transition ratios) or
Degenerate (the single D4-level ratio), with the supporting exact
invariants Q, R and the quartic-transversality quantity A3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .jetcalc import UniPoly
from .rationals import Q, rat, rat_str
from .surfaces import ExcludedRatio, SurfacePair, validate_pair


def _sqrt_exact(q):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = _isqrt(num)
    rd = _isqrt(den)
    if rn is None or rd is None:
        return None
    return Q(rn, rd)


def _isqrt(n):
    n = int(n)
    r = int(n**0.5)
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


@dataclass
class LambdaLandscape:
    special: list  # exact rationals when Q(lambda) factors; else isolated
    special_intervals: list  # isolating intervals for irrational values
    degenerate: object  # rational or None
    warnings: list = field(default_factory=list)
    excluded = (Q(0), Q(1))


def special_value_poly(pair: SurfacePair) -> UniPoly:
    """Q(lambda) = f030 lambda^2 - g030 (1-lambda)^2 as a polynomial."""
    f, g = pair.f030, pair.g030
    return UniPoly([-g, 2 * g, f - g])


def lambda_landscape(pair: SurfacePair) -> LambdaLandscape:
    """The special and degenerate ratios of the pair."""
    out = LambdaLandscape([], [], None)
    f030, g030 = pair.f030, pair.g030
    if f030 * g030 > 0:
        f3 = _sqrt_exact(f030)
        g3 = _sqrt_exact(abs(g030))
        if f3 is not None and g3 is not None:
            if f3 == g3:
                out.special = [Q(1, 2)]
                out.warnings.append("equal cubic strengths: the two special values merge at 1/2")
            else:
                out.special = sorted((g3 / (g3 + f3), g3 / (g3 - f3)))
        else:
            qpoly = special_value_poly(pair)
            if qpoly.degree == 1:
                out.special = [-qpoly.c[0] / qpoly.c[1]]
            else:
                out.special_intervals = qpoly.isolate_real_roots()
    f20, g20 = pair.f20, pair.g20
    if f20 != g20:
        out.degenerate = g20 / (g20 - f20)
    return out


def q_invariant(pair: SurfacePair, lam) -> Q:
    lam = rat(lam) if isinstance(lam, (int, str)) else lam
    return pair.f030 * lam**2 - pair.g030 * (1 - lam) ** 2


def r_invariant(pair: SurfacePair) -> Q:
    f, g = pair.m, pair.n
    return pair.f20**2 * pair.f030 * (g.get(1, 2) ** 2 - 3 * g.get(2, 1) * pair.g030) - pair.g20**2 * pair.g030 * (
        f.get(1, 2) ** 2 - 3 * f.get(2, 1) * pair.f030
    )


def gauss_tangency(pair: SurfacePair):
    """Curvatures (X^2-coefficients) of the two parabolic-image arcs in
    the Gauss image; they differ exactly when R is nonzero."""
    f, g = pair.m, pair.n
    cm = (3 * pair.f030 * f.get(2, 1) - f.get(1, 2) ** 2) / (12 * pair.f20**2 * pair.f030)
    cn = (3 * pair.g030 * g.get(2, 1) - g.get(1, 2) ** 2) / (12 * pair.g20**2 * pair.g030)
    return cm, cn


class NoSpecialValues(ValueError):
    pass


def a3_condition(pair: SurfacePair, which: int = +1) -> Q:
    """The quartic-level transversality quantity at a special ratio.

    Evaluates A + which*B*sqrt(f030*g030) where the radical-free split
    keeps everything rational:
      A = (4 g040 g20 - g120^2) f030^2 + 2 f120 g120 f030 g030
          + (4 f040 f20 - f120^2) g030^2
      B = 4 g040 f20 f030 + 4 f040 g20 g030
    Returns the exact rational value when sqrt(f030*g030) is rational;
    otherwise a rational in {-1, 0, +1} carrying the exact sign of the
    (irrational) value, certified by squaring.
    """
    f, g = pair.m, pair.n
    f030, g030 = pair.f030, pair.g030
    if g030 < 0:
        raise NoSpecialValues("special ratios require matching cubic signs")
    A = (
        (4 * g.get(0, 4) * pair.g20 - g.get(1, 2) ** 2) * f030**2
        + 2 * f.get(1, 2) * g.get(1, 2) * f030 * g030
        + (4 * f.get(0, 4) * pair.f20 - f.get(1, 2) ** 2) * g030**2
    )
    B = 4 * g.get(0, 4) * pair.f20 * f030 + 4 * f.get(0, 4) * pair.g20 * g030
    root = _sqrt_exact(f030 * g030)
    if root is not None:
        return A + which * B * root
    return a3_condition_sign(A, B, f030 * g030, which)


def a3_condition_sign(A, B, rad, which):
    """Exact sign of A + which*B*sqrt(rad) as a +-1/0 rational proxy."""
    s = which * B
    if not s:
        return A
    # compare A against -s*sqrt(rad)
    if A >= 0 and s >= 0:
        return Q(1) if (A or s) else Q(0)
    if A <= 0 and s <= 0:
        return Q(-1) if (A or s) else Q(0)
    diff = A * A - s * s * rad  # sign(A + s sqrt(rad)) = sign(A)*sign(diff)
    sign_a = 1 if A > 0 else -1
    if not diff:
        return Q(0)
    return Q(sign_a) if diff > 0 else Q(-sign_a)


@dataclass
class CaseLabel:
    case: str  # "Generic11" | "Special12" | "Degenerate2"
    subcase: str | None = None  # "PosDef" | "NegDef" | "Indef"
    which: int | None = None  # +1/-1 for the special branch
    region: str | None = None  # "ac" | "b" | "d"
    q_value: object = None
    r_value: object = None
    versal: bool = True
    flags: list = field(default_factory=list)

    def to_dict(self):
        return {
            "case": self.case,
            "subcase": self.subcase,
            "region": self.region,
            "Q": rat_str(self.q_value) if self.q_value is not None else None,
            "R": rat_str(self.r_value) if self.r_value is not None else None,
            "versal": self.versal,
            "warnings": list(self.flags),
        }


def classify_lambda(pair: SurfacePair, lam) -> CaseLabel:
    """Case and subcase of one ratio.

    Degenerate when the reduced quadratic term dies; Special when Q
    vanishes; otherwise Generic with the subcase read from the signs of
    f030*g030 and Q*R, and the bifurcation-region tag from the same
    signs.
    """
    lam = rat(lam) if isinstance(lam, (int, str)) else lam
    if lam == 0 or lam == 1:
        raise ExcludedRatio("lambda must avoid 0 and 1")
    rep = validate_pair(pair)
    qv = q_invariant(pair, lam)
    rv = r_invariant(pair)
    label = CaseLabel("", q_value=qv, r_value=rv, versal=rep.checks["versal"])
    if not rep.checks["versal"]:
        label.flags.append("not versal (g011 = 0)")
    if lam * pair.f20 + (1 - lam) * pair.g20 == 0:
        label.case = "Degenerate2"
        return label
    if qv == 0:
        label.case = "Special12"
        fg = pair.f030 * pair.g030
        root = _sqrt_exact(fg)
        if root is not None:
            f3 = _sqrt_exact(pair.f030)
            g3 = _sqrt_exact(pair.g030)
            if f3 and g3:
                label.which = +1 if lam * (g3 + f3) == g3 else -1
        return label
    label.case = "Generic11"
    if rv == 0:
        label.flags.append("R = 0: Gauss images superosculate (more degenerate)")
        label.subcase = "MoreDegenerate"
        return label
    fg = pair.f030 * pair.g030
    qr = qv * rv
    if fg < 0 and qr > 0:
        label.subcase, label.region = "PosDef", "d"
    elif fg > 0 and qr > 0:
        label.subcase, label.region = "NegDef", "ac"
    else:  # qr < 0
        label.subcase = "Indef"
        label.region = "ac" if fg > 0 else "b"
    return label
