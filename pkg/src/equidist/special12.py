"""Special-ratio machinery: the versal family at a special value of the
chord ratio, and the two transition loci in its (p, q) unfolding plane.

The family's third component is

    h~ = sign*s1^2 + s2^2*u2 + s2*u1^2 + s2^4 + s2^3*u1 + p*s2 + q*s2^3

and the loci are where the cuspidal-edge set or the self-intersection
set of its image changes: the line p = 0 together with an algebraic
branch p(q) = q^3/16 + 9q^4/1024 + ..., and the parabola ray p = -q^2,
q >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .jetcalc import TruncPoly, UniPoly, resultant
from .rationals import Q, rat, rat_loose


@dataclass
class SpecialFamily:
    sign_s1: int = 1
    p: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        if self.sign_s1 not in (1, -1):
            raise ValueError("sign_s1 must be +-1")

    def height(self, s1, s2, u1, u2):
        return (
            self.sign_s1 * s1 * s1
            + s2 * s2 * u2
            + s2 * u1 * u1
            + s2**4
            + s2**3 * u1
            + self.p * s2
            + self.q * s2**3
        )

    def ds2(self, s2, u1, u2):
        return 2 * s2 * u2 + u1 * u1 + 4 * s2**3 + 3 * s2 * s2 * u1 + self.p + 3 * self.q * s2 * s2

    def solve_u2(self, s2, u1):
        """u2 on the critical set {s1 = 0, d h~/d s2 = 0}; needs s2 != 0."""
        return -(u1 * u1 + 4 * s2**3 + 3 * s2 * s2 * u1 + self.p + 3 * self.q * s2 * s2) / (2 * s2)


@dataclass
class PlaneLoci:
    cusp_branch: list = field(default_factory=list)  # (q, p) samples
    cusp_line: str = "p=0"
    selfint_branch: list = field(default_factory=list)  # (q, p) samples


def _signed_area_quartic(q):
    """The quartic in s2 controlling the singular-set intervals:
    9 s2^4 + 32 s2^3 + 12 q s2^2 - 4 p, as a TruncPoly in (s2, P)."""
    vars = ("s2", "P")
    order = 8
    s2 = TruncPoly.variable("s2", vars, order)
    P = TruncPoly.variable("P", vars, order)
    return 9 * s2**4 + 32 * s2**3 + 12 * q * s2 * s2 - 4 * P


def cusp_branch_value(q) -> Q:
    """The nonzero solution p near 0 of the discriminant condition.

    The quartic acquires a double root in s2; eliminating s2 against its
    derivative gives a polynomial in p whose real roots are isolated
    exactly, and the branch root (the one tracking q^3/16) is returned.
    """
    q = rat_loose(q)
    if not q:
        return Q(0)
    quartic = _signed_area_quartic(q)
    dq = quartic.diff("s2")
    disc = resultant(quartic, dq, "s2").to_unipoly()  # polynomial in P
    # strip the roots at P = 0 coming from the double root s2 = 0
    while disc.c and not disc.c[0]:
        disc = UniPoly(disc.c[1:])
    target = q**3 / 16
    best = None
    for lo, hi in disc.isolate_real_roots():
        lo, hi = disc.refine_root(lo, hi, abs(target) / 2**80 + Q(1, 2**120))
        mid = (lo + hi) / 2
        if best is None or abs(mid - target) < abs(best - target):
            best = mid
    if best is None:
        raise ArithmeticError("no branch root found at q=%s" % (q,))
    return best


def cusp_locus(q_range, n: int) -> list:
    """Sample the algebraic cusp-transition branch p(q) over q_range.

    Returns [(q, p)] with exact rational q and p a certified rational
    approximation of the branch root (the companion locus is the line
    p = 0, reported separately in PlaneLoci).
    """
    if n < 2:
        raise ValueError("need n >= 2 samples")
    qlo, qhi = (rat_loose(v) for v in q_range)
    out = []
    for i in range(n):
        q = qlo + (qhi - qlo) * i / (n - 1)
        out.append((q, cusp_branch_value(q)))
    return out


def fit_cusp_series(q_min, q_max, n=16, terms=5):
    """Least-squares estimate of the leading series coefficients of the
    cusp branch, p(q)/q^3 ~ c3 + c4 q + ..., over a geometric q-sample.

    Solved in exact rational arithmetic (normal equations + Gaussian
    elimination) to avoid float conditioning; returns [c3, c4, ...].
    """
    q_min, q_max = rat_loose(q_min), rat_loose(q_max)
    step = _rational_root(q_max / q_min, n - 1)
    qs = [q_min * step**i for i in range(n)]
    rows, ys = [], []
    for q in qs:
        p = cusp_branch_value(q)
        y = p / q**3
        rows.append([q**j for j in range(terms)])
        ys.append(y)
    # normal equations A^T A x = A^T y over Q
    m = terms
    ata = [[sum(r[i] * r[j] for r in rows) for j in range(m)] for i in range(m)]
    aty = [sum(r[i] * y for r, y in zip(rows, ys)) for i in range(m)]
    return _solve_exact(ata, aty)


def _rational_root(value, k, bits=96):
    """Rational approximation to value**(1/k) for value > 0."""
    poly = UniPoly([-value] + [Q(0)] * (k - 1) + [Q(1)])
    roots = [iv for iv in poly.isolate_real_roots() if iv[1] > 0]
    lo, hi = roots[-1]
    lo, hi = poly.refine_root(lo, hi, (1 + value) / Q(2) ** bits)
    return (lo + hi) / 2


def _solve_exact(a, b):
    """Gaussian elimination over exact rationals."""
    m = len(b)
    a = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(m):
        piv = next(r for r in range(col, m) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(m):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][m] for r in range(m)]


def selfint_locus(q_range) -> list:
    """The ray p = -q^2, q >= 0 (exact); valid only locally, |q| < 1."""
    qlo, qhi = (rat_loose(v) for v in q_range)
    if qhi >= 1:
        raise ValueError("self-intersection locus is local: need q < 1")
    out = []
    n = 33
    for i in range(n):
        q = qlo + (qhi - qlo) * i / (n - 1)
        if q >= 0:
            out.append((q, -q * q))
    return out


def plane_loci(q_range=(Q(-1, 5), Q(1, 5)), n=33) -> PlaneLoci:
    return PlaneLoci(
        cusp_branch=cusp_locus(q_range, n),
        selfint_branch=selfint_locus((max(q_range[0], Q(0)), q_range[1])),
    )


def evaluate_special(family: SpecialFamily, grid):
    """Mesh of the image surface over the unfolding; see the mesh module."""
    from . import mesh

    return mesh.extract_special(family, grid)


# ---------------------------------------------------------------------------
# Emitters


def loci_csv(loci: PlaneLoci) -> str:
    lines = ["# cusp transition branch: q,p (the line p=0 is implicit)"]
    for q, p in loci.cusp_branch:
        lines.append("%.17g,%.17g" % (float(q), float(p)))
    lines.append("# self-intersection transition: q,p")
    for q, p in loci.selfint_branch:
        lines.append("%.17g,%.17g" % (float(q), float(p)))
    return "\n".join(lines) + "\n"


def loci_svg(loci: PlaneLoci, size=480) -> str:
    """The (p,q)-plane picture: axes, the solid cusp-transition branch
    (plus the p=0 line), and the dashed self-intersection parabola."""
    all_q = [float(q) for q, _ in loci.cusp_branch + loci.selfint_branch] or [1.0]
    all_p = [float(p) for _, p in loci.cusp_branch + loci.selfint_branch] or [1.0]
    qs = max(max(abs(v) for v in all_q), 1e-9)
    ps = max(max(abs(v) for v in all_p), 1e-9)
    half = size / 2.0

    def pt(q, p):
        return (half + float(q) / qs * (half * 0.9), half - float(p) / ps * (half * 0.9))

    def path(samples):
        return "M " + " L ".join("%.2f %.2f" % pt(q, p) for q, p in samples)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (size, size, size, size),
        '<line x1="0" y1="%.1f" x2="%d" y2="%.1f" stroke="#888"/>' % (half, size, half),
        '<line x1="%.1f" y1="0" x2="%.1f" y2="%d" stroke="#888"/>' % (half, half, size),
        # the line p=0 is part of the cusp-transition locus: overdraw the axis
        '<line x1="0" y1="%.1f" x2="%d" y2="%.1f" stroke="black" stroke-width="2" id="cusp-line"/>'
        % (half, size, half),
    ]
    if loci.cusp_branch:
        parts.append(
            '<path id="cusp-branch" d="%s" fill="none" stroke="black" stroke-width="2"/>'
            % path(loci.cusp_branch)
        )
    if loci.selfint_branch:
        parts.append(
            '<path id="selfint-branch" d="%s" fill="none" stroke="black" '
            'stroke-width="2" stroke-dasharray="6 4"/>' % path(loci.selfint_branch)
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
