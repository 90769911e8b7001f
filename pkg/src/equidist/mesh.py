"""Numeric extraction of equidistant surfaces and their feature curves.

Everything here is float-based: the exact machinery reduces a problem to
a normal form, and this module turns normal forms into meshes (vertex /
face grids) plus tagged feature polylines (cuspidal edges and
self-intersection curves), and counts features independently of the
algebraic route so the two can be cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .degen2 import DegenNormalForm, MoreDegenerate, compute_L, cone_regime, sheet_cubic
from .rationals import Q


@dataclass
class GridSpec:
    ranges: tuple = ((-1.0, 1.0), (-1.0, 1.0))
    res: tuple = (64, 64)
    seeds: int = 4
    tolerance: float = 1e-9

    def __post_init__(self):
        if min(self.res) < 2:
            raise ValueError("resolutions must be >= 2")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    def axis(self, i):
        lo, hi = self.ranges[i]
        n = self.res[i]
        return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


@dataclass
class Feature:
    kind: str  # "CuspEdge" | "SelfIntersection"
    points: list  # [(x, y, z)]
    params: dict = field(default_factory=dict)


@dataclass
class Mesh:
    vertices: list = field(default_factory=list)
    faces: list = field(default_factory=list)
    features: list = field(default_factory=list)
    branches: list = field(default_factory=list)  # per-face branch tag

    @property
    def empty(self):
        return not self.vertices and not self.features

    def feature_count(self, kind):
        """Number of distinct feature curves: polylines that are arcs of
        one curve (same sheet root) count once."""
        keys = set()
        for i, f in enumerate(self.features):
            if f.kind != kind:
                continue
            if "root_index" in f.params:
                keys.add(("root", f.params["root_index"]))
            else:
                keys.add(("poly", i))
        return len(keys)


# ---------------------------------------------------------------------------
# Marching squares


def iso_polylines(values, xs, ys):
    """Zero-level polylines of a scalar grid (values[i][j] at xs[i],
    ys[j]), linked into maximal chains."""
    segs = []
    nx, ny = len(xs), len(ys)

    def cross(v0, v1, p0, p1):
        t = v0 / (v0 - v1)
        return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))

    for i in range(nx - 1):
        for j in range(ny - 1):
            corners = [
                (values[i][j], (xs[i], ys[j])),
                (values[i + 1][j], (xs[i + 1], ys[j])),
                (values[i + 1][j + 1], (xs[i + 1], ys[j + 1])),
                (values[i][j + 1], (xs[i], ys[j + 1])),
            ]
            if any(v is None for v, _ in corners):
                continue
            pts = []
            for k in range(4):
                v0, p0 = corners[k]
                v1, p1 = corners[(k + 1) % 4]
                if (v0 < 0) != (v1 < 0):
                    pts.append(cross(v0, v1, p0, p1))
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            elif len(pts) == 4:
                # saddle cell: split by the center sign
                center = sum(v for v, _ in corners) / 4.0
                if (center < 0) == (corners[0][0] < 0):
                    segs.append((pts[0], pts[3]))
                    segs.append((pts[1], pts[2]))
                else:
                    segs.append((pts[0], pts[1]))
                    segs.append((pts[2], pts[3]))
    return _link_segments(segs)


def _link_segments(segs, digits=9):
    key = lambda p: (round(p[0], digits), round(p[1], digits))
    adj = {}
    for idx, (a, b) in enumerate(segs):
        adj.setdefault(key(a), []).append((idx, b))
        adj.setdefault(key(b), []).append((idx, a))
    used = set()
    chains = []
    for idx, (a, b) in enumerate(segs):
        if idx in used:
            continue
        chain = [a, b]
        used.add(idx)
        for grow_end in (True, False):
            while True:
                tip = chain[-1] if grow_end else chain[0]
                nxt = next(
                    ((i, e) for i, e in adj.get(key(tip), []) if i not in used), None
                )
                if nxt is None:
                    break
                used.add(nxt[0])
                if grow_end:
                    chain.append(nxt[1])
                else:
                    chain.insert(0, nxt[1])
        chains.append(chain)
    return chains


# ---------------------------------------------------------------------------
# Generic Case 1.1 normal form


_SUBCASE_SIGMAS = {"PosDef": (1, 1), "NegDef": (-1, -1), "Indef": (1, -1)}


def extract_generic(subcase: str, eps: float, grid: GridSpec) -> Mesh:
    """Mesh of the generic-case normal form (u1, u2, s1^2 + s2^3
    + sig1*s2*u1^2 + sig2*s2*u2^2 + eps*s2) over a (u1, u2) grid.

    Critical set: s1 = 0 and 3 s2^2 + sig1 u1^2 + sig2 u2^2 + eps = 0;
    two s2-sheets where the right-hand side allows, cuspidal edge on
    s2 = 0.
    """
    sig1, sig2 = _SUBCASE_SIGMAS[subcase]
    u1s, u2s = grid.axis(0), grid.axis(1)
    mesh = Mesh()

    def height(s2, u1, u2):
        return s2**3 + sig1 * s2 * u1 * u1 + sig2 * s2 * u2 * u2 + eps * s2

    for sheet in (1.0, -1.0):
        index = {}
        for i, u1 in enumerate(u1s):
            for j, u2 in enumerate(u2s):
                rhs = -(sig1 * u1 * u1 + sig2 * u2 * u2 + eps) / 3.0
                if rhs < 0:
                    continue
                s2 = sheet * math.sqrt(rhs)
                index[(i, j)] = len(mesh.vertices)
                mesh.vertices.append((u1, u2, height(s2, u1, u2)))
        _emit_faces(mesh, index, len(u1s), len(u2s), branch=0 if sheet > 0 else 1)

    # cuspidal edge: s2 = 0, sig1 u1^2 + sig2 u2^2 + eps = 0, height 0
    values = [[sig1 * u1 * u1 + sig2 * u2 * u2 + eps for u2 in u2s] for u1 in u1s]
    for chain in iso_polylines(values, u1s, u2s):
        mesh.features.append(
            Feature("CuspEdge", [(x, y, 0.0) for x, y in chain], {"subcase": subcase, "eps": eps})
        )
    return mesh


def _emit_faces(mesh: Mesh, index, nx, ny, branch=0):
    for i in range(nx - 1):
        for j in range(ny - 1):
            q = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            if all(c in index for c in q):
                a, b, c, d = (index[c] for c in q)
                mesh.faces.append((a, b, c))
                mesh.faces.append((a, c, d))
                mesh.branches += [branch, branch]


# ---------------------------------------------------------------------------
# Degenerate Case 2


class _DegenEval:
    """Float evaluation of the degenerate normal form and its quadric."""

    def __init__(self, nf: DegenNormalForm, p=0.0, q=0.0):
        self.b, self.c, self.d, self.e = (float(v) for v in nf.tuple())
        self.k = float((3 * nf.b * nf.e - nf.b - nf.d**2) / nf.b) if nf.b else None
        self.p, self.q = float(p), float(q)
        self.nf = nf

    def u1(self, s1, s2, u2):
        return (
            -2 * self.b * s1 * s2
            - 2 * self.c * s1 * u2
            - self.d * s2 * s2
            - 3 * s1 * s1
            - 4 * s1**3
            - 2 * self.q * s1
        )

    def height(self, s1, s2, u2, u1=None):
        if u1 is None:
            u1 = self.u1(s1, s2, u2)
        b, c, d, e = self.b, self.c, self.d, self.e
        return (
            s1 * u1
            + s1**3
            + s2 * s2 * u2
            + s2 * u2 * u2
            + b * s1 * s1 * s2
            + c * s1 * s1 * u2
            + d * s1 * s2 * s2
            + e * s2**3
            + s1**4
            + self.p * s2
            + self.q * s1 * s1
        )

    def image(self, s1, s2, u2):
        u1 = self.u1(s1, s2, u2)
        return (u1, u2, self.height(s1, s2, u2, u1))

    def from_xcoords(self, x1, x2, s2):
        """(x1, x2, s2) -> (s1, s2, u2) via s1 = x2-(d/b)s2, u2 = x1-s2."""
        return (x2 - (self.d / self.b) * s2, s2, x1 - s2)

    def c2(self, s1, s2, u2):
        b, c, d, e = self.b, self.c, self.d, self.e
        return (
            (b * b - 3 * d) * s1 * s1
            + (b * d - 9 * e) * s1 * s2
            - (c * d + 3) * s1 * u2
            + (d * d - 3 * b * e) * s2 * s2
            - (3 * c * e + b) * s2 * u2
            - c * u2 * u2
        )

    def gamma(self, s1, s2, u2):
        b, d, e = self.b, self.d, self.e
        return (
            (s2 + u2) ** 2
            + b * s1 * s1
            + 2 * d * s1 * s2
            + (3 * e - 1) * s2 * s2
        )


def _regime_point(ev: _DegenEval, regime, a, bb, sign):
    """One solved point of {x1^2 + b x2^2 + k s2^2 = -p} for parameter
    pair (a, bb) and branch sign; None when the square root is empty."""
    b, k, p = ev.b, ev.k, ev.p
    if regime in ("ParamX1X2", "PointOnly"):
        x1, x2 = a, bb
        val = (-p - x1 * x1 - b * x2 * x2) / k
        if val < 0:
            return None
        return ev.from_xcoords(x1, x2, sign * math.sqrt(val))
    if regime == "ParamX1S2":
        x1, s2 = a, bb
        val = (-p - x1 * x1 - k * s2 * s2) / b
        if val < 0:
            return None
        return ev.from_xcoords(x1, sign * math.sqrt(val), s2)
    if regime == "ParamX2S2":
        x2, s2 = a, bb
        val = -p - b * x2 * x2 - k * s2 * s2
        if val < 0:
            return None
        return ev.from_xcoords(sign * math.sqrt(val), x2, s2)
    raise ValueError(regime)


def extract_degen(nf: DegenNormalForm, p, q, grid: GridSpec) -> Mesh:
    """Mesh the degenerate-case equidistant near the origin.

    Parametrizes the singular quadric {gamma + p = 0} per the cone
    regime, two branch signs for the solved variable, and maps through
    (u1, u2, height).  Features at p = q = 0 come from the exact ray /
    elimination structure (see degen_feature_counts)."""
    regime, _ = cone_regime(nf)
    ev = _DegenEval(nf, p, q)
    mesh = Mesh()
    if regime == "ParamSolveS1":
        return _extract_degen_b0(ev, grid, mesh)
    if regime == "PointOnly" and float(p) >= 0:
        if float(p) == 0 and float(q) == 0:
            mesh.vertices.append((0.0, 0.0, 0.0))
        return mesh  # ellipsoid needs -p > 0; otherwise empty/point

    axes = (grid.axis(0), grid.axis(1))
    for sign in (1.0, -1.0):
        index = {}
        for i, a in enumerate(axes[0]):
            for j, bb in enumerate(axes[1]):
                pt = _regime_point(ev, regime, a, bb, sign)
                if pt is None:
                    continue
                index[(i, j)] = len(mesh.vertices)
                mesh.vertices.append(ev.image(*pt))
        _emit_faces(mesh, index, len(axes[0]), len(axes[1]), branch=0 if sign > 0 else 1)

    if float(p) == 0 and float(q) == 0:
        for f in degen_feature_polylines(nf):
            mesh.features.append(f)
    else:
        for f in _degen_cusp_polylines_offlevel(ev, regime, grid):
            mesh.features.append(f)
    return mesh


def _extract_degen_b0(ev: _DegenEval, grid: GridSpec, mesh: Mesh):
    """b = 0 fallback: solve the quadric linearly for s1 over (s2, u2)."""
    if not ev.d:
        raise MoreDegenerate("b = d = 0: quadric not solvable for s1")
    s2s, u2s = grid.axis(0), grid.axis(1)
    index = {}
    for i, s2 in enumerate(s2s):
        if abs(s2) < 1e-12:
            continue
        for j, u2 in enumerate(u2s):
            s1 = -(2 * s2 * u2 + u2 * u2 + 3 * ev.e * s2 * s2 + ev.p) / (2 * ev.d * s2)
            index[(i, j)] = len(mesh.vertices)
            mesh.vertices.append(ev.image(s1, s2, u2))
    _emit_faces(mesh, index, len(s2s), len(u2s))
    return mesh


def _cone_loops(ev: _DegenEval, regime, radius, samples):
    """Closed sample loops on the p=q=0 cone, one per branch sign.

    Together the two loops hit every cone line in exactly two
    (antipodal) points, so zero counts along them are twice the
    projective count."""
    loops = []
    for sign in (1.0, -1.0):
        loop = []
        for s in range(samples):
            th = 2 * math.pi * (s + 0.37) / samples
            pt = _regime_point(ev, regime, radius * math.cos(th), radius * math.sin(th), sign)
            loop.append(pt)
        loops.append(loop)
    return loops


def numeric_cusp_count(nf: DegenNormalForm, radius=0.01, samples=1440):
    """Cuspidal edges through the origin, counted numerically: sign
    changes of the C2 conic along cone loops, halved (antipodal pairs)."""
    regime, _ = cone_regime(nf)
    if regime == "PointOnly":
        return 0
    if regime == "ParamSolveS1":
        raise MoreDegenerate("numeric cusp tracing needs b != 0")
    ev = _DegenEval(nf)
    zeros = 0
    for loop in _cone_loops(ev, regime, radius, samples):
        vals = [ev.c2(*pt) for pt in loop if pt is not None]
        if len(vals) != len(loop):
            raise AssertionError("cone loop left the parametrized chart")
        for i in range(len(vals)):
            if (vals[i] < 0) != (vals[(i + 1) % len(vals)] < 0):
                zeros += 1
    if zeros % 2:
        raise ArithmeticError("odd zero count on closed antipodal loops")
    return zeros // 2


def _loop_zero_directions(ev: _DegenEval, regime, radius, samples):
    """Refined cone points where C2 vanishes, one per loop crossing."""
    out = []
    for sign_i, loop in enumerate(_cone_loops(ev, regime, radius, samples)):
        sign = 1.0 if sign_i == 0 else -1.0
        ths = [2 * math.pi * (s + 0.37) / samples for s in range(samples)]
        vals = [ev.c2(*pt) for pt in loop]
        for i in range(samples):
            j = (i + 1) % samples
            if (vals[i] < 0) == (vals[j] < 0):
                continue
            lo, hi = ths[i], ths[i] + 2 * math.pi / samples
            flo = vals[i]
            for _ in range(60):
                mid = (lo + hi) / 2
                pm = _regime_point(ev, regime, radius * math.cos(mid), radius * math.sin(mid), sign)
                fm = ev.c2(*pm)
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            out.append(
                _regime_point(ev, regime, radius * math.cos(lo), radius * math.sin(lo), sign)
            )
    return out


def degen_feature_polylines(nf: DegenNormalForm, radius=0.01, samples=1440):
    """Feature polylines at p = q = 0: cusp-edge rays through the origin
    and self-intersection curves per qualifying sheet root."""
    regime, _ = cone_regime(nf)
    ev = _DegenEval(nf)
    feats = []
    if regime not in ("PointOnly", "ParamSolveS1"):
        dirs = _loop_zero_directions(ev, regime, radius, samples)
        kept = []
        for v in dirs:
            if any(_same_line(v, w) for w in kept):
                continue
            kept.append(v)
        for v in kept:
            ts = [radius * (k / 16.0) for k in range(-16, 17)]
            norm = math.sqrt(sum(c * c for c in v))
            unit = tuple(c / norm for c in v)
            pts = [ev.image(*(t * c for c in unit)) for t in ts]
            feats.append(Feature("CuspEdge", pts, {"direction": unit}))
    feats.extend(selfint_features(nf))
    return feats


def _same_line(v, w, tol=1e-6):
    cross = (
        (v[1] * w[2] - v[2] * w[1]) ** 2
        + (v[2] * w[0] - v[0] * w[2]) ** 2
        + (v[0] * w[1] - v[1] * w[0]) ** 2
    )
    nv = sum(c * c for c in v)
    nw = sum(c * c for c in w)
    return cross < tol * nv * nw


def _degen_cusp_polylines_offlevel(ev: _DegenEval, regime, grid: GridSpec):
    """Cusp edges at (p,q) != (0,0): zero curves of C2 on the quadric,
    one marching-squares pass per branch sign."""
    feats = []
    axes = (grid.axis(0), grid.axis(1))
    for sign in (1.0, -1.0):
        values = []
        for a in axes[0]:
            row = []
            for bb in axes[1]:
                pt = _regime_point(ev, regime, a, bb, sign)
                row.append(None if pt is None else ev.c2(*pt))
            values.append(row)
        for chain in iso_polylines(values, axes[0], axes[1]):
            pts = []
            for a, bb in chain:
                pt = _regime_point(ev, regime, a, bb, sign)
                if pt is not None:
                    pts.append(ev.image(*pt))
            if len(pts) >= 2:
                feats.append(Feature("CuspEdge", pts, {"branch": 0 if sign > 0 else 1}))
    return feats


# -- self-intersections via the elimination chain


def _refined_sheet_roots(nf: DegenNormalForm, width=Q(1, 10**30)):
    cubic = sheet_cubic(nf)
    out = []
    for lo, hi in cubic.isolate_real_roots():
        lo, hi = cubic.refine_root(lo, hi, width)
        out.append((lo + hi) / 2)
    return out


def _l0_float_coeffs(nf: DegenNormalForm, k0):
    """Float coefficient map {(y1_pow, z_pow): c} of L0 at rational k0."""
    L = compute_L(nf, k0, z_order=4, with_pq=False)
    return {(e[0], e[1]): float(c) for e, c in L.coeffs.items()}


def _chain_point(nf, k0f, y1, z, p=0.0, q=0.0):
    """Map (y1, z) on sheet k0 through the elimination chain to R^3."""
    b, c, d, e = (float(v) for v in nf.tuple())
    k = k0f + z
    x1 = -(e * k**3 + d * k * k + b * k + 1) / 4.0
    y2 = k * y1
    den = -c * d * y1 * y1 - 3 * c * e * y1 * y2 + b * y1 * y2 + d * y2 * y2
    if abs(den) < 1e-300:
        return None
    x2 = (
        b * c * x1 * y1 * y1
        + c * d * x1 * y1 * y2
        - b * x1 * y2 * y2
        - 6 * x1 * x1 * y1 * y2
        - 2 * y1**3 * y2
        - 3 * x1 * y1 * y2
        - q * y1 * y2
    ) / den
    if abs(y2) < 1e-300:
        return None
    u2 = -(b * x1 * y1 + d * x1 * y2 + d * x2 * y1 + 3 * e * x2 * y2) / y2
    s1, s2 = x1 + y1, x2 + y2
    ev = _DegenEval(nf, p, q)
    return ev.image(s1, s2, u2)


def numeric_selfint_count(nf: DegenNormalForm, radius=1e-3, samples=720):
    """Self-intersection curves through the origin, numerically: sign
    changes of L0 around a small (y1, z) circle per sheet root; four
    crossings = the two local lines of one curve."""
    count = 0
    for k0 in _refined_sheet_roots(nf):
        coeffs = _l0_float_coeffs(nf, k0)

        def val(y1, z):
            return sum(c * y1**a * z**b for (a, b), c in coeffs.items())

        signs = []
        for s in range(samples):
            th = 2 * math.pi * (s + 0.29) / samples
            signs.append(val(radius * math.cos(th), radius * math.sin(th)) < 0)
        changes = sum(1 for i in range(samples) if signs[i] != signs[(i + 1) % samples])
        if changes == 4:
            count += 1
        elif changes not in (0, 4):
            raise ArithmeticError("unexpected crossing count %d on L0 circle" % changes)
    return count


def selfint_features(nf: DegenNormalForm, box=0.02, res=96):
    """Self-intersection polylines: zero set of L0(k0) in (y1, z), mapped
    through the chain, one feature group per qualifying sheet root."""
    feats = []
    for ridx, k0 in enumerate(_refined_sheet_roots(nf)):
        coeffs = _l0_float_coeffs(nf, k0)
        c0 = coeffs.get((2, 0), 0.0)
        c2 = coeffs.get((0, 2), 0.0)
        if not (c0 * c2 < 0):
            continue
        ax = [(-box + 2 * box * i / (res - 1)) for i in range(res)]
        values = [
            [sum(c * y1**a * z**b for (a, b), c in coeffs.items()) for z in ax] for y1 in ax
        ]
        k0f = float(k0)
        for chain in iso_polylines(values, ax, ax):
            pts = []
            for y1, z in chain:
                pt = _chain_point(nf, k0f, y1, z)
                if pt is not None:
                    pts.append(pt)
            if len(pts) >= 2:
                feats.append(Feature("SelfIntersection", pts, {"root_index": ridx, "k0": k0f}))
    return feats


def feature_curves(source, kind):
    """Feature polylines of the given kind.

    source may be an already-extracted Mesh (filtered) or a degenerate
    normal form (features computed at p = q = 0)."""
    if isinstance(source, Mesh):
        return [f for f in source.features if f.kind == kind]
    if isinstance(source, DegenNormalForm):
        if kind == "SelfIntersection":
            return selfint_features(source)
        if kind == "CuspEdge":
            return [f for f in degen_feature_polylines(source) if f.kind == kind]
        raise ValueError("unknown feature kind %r" % kind)
    raise TypeError("source must be a Mesh or a normal form")


def degen_feature_counts(nf: DegenNormalForm):
    """Numeric (cusp_edges, self_int) through the origin at p = q = 0."""
    return numeric_cusp_count(nf), numeric_selfint_count(nf)


# ---------------------------------------------------------------------------
# Special-ratio family meshes


def extract_special(family, grid: GridSpec) -> Mesh:
    """Mesh of the special-ratio versal family over a (s2, u1) grid.

    u2 is solved linearly on the critical set (s2 != 0); the cusp-edge
    locus satisfies s2 * (d2 h / d s2^2) = 8 s2^3 + 3 s2^2 u1
    + 3 q s2^2 - u1^2 - p = 0, traced by marching squares."""
    s2s, u1s = grid.axis(0), grid.axis(1)
    mesh = Mesh()
    index = {}
    for i, s2 in enumerate(s2s):
        if abs(s2) < 1e-12:
            continue
        for j, u1 in enumerate(u1s):
            u2 = family.solve_u2(s2, u1)
            index[(i, j)] = len(mesh.vertices)
            mesh.vertices.append((u1, u2, family.height(0.0, s2, u1, u2)))
    _emit_faces(mesh, index, len(s2s), len(u1s))

    p, q = family.p, family.q
    values = [
        [8 * s2**3 + 3 * s2 * s2 * u1 + 3 * q * s2 * s2 - u1 * u1 - p for u1 in u1s]
        for s2 in s2s
    ]
    for chain in iso_polylines(values, s2s, u1s):
        pts = []
        for s2, u1 in chain:
            if abs(s2) < 1e-12:
                continue
            u2 = family.solve_u2(s2, u1)
            pts.append((u1, u2, family.height(0.0, s2, u1, u2)))
        if len(pts) >= 2:
            mesh.features.append(Feature("CuspEdge", pts, {"p": p, "q": q}))
    return mesh


# ---------------------------------------------------------------------------
# Parameter sweeps


@dataclass
class SweepConfig:
    center: tuple = (0.0, 0.0)
    radius: float = 0.05
    samples: int = 24
    grid: GridSpec = None
    source: object = None  # DegenNormalForm or SpecialFamily factory

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("need at least 2 sweep samples")
        if self.grid is None:
            # the transition structure lives at the scale of the circuit
            box = max(4.0 * self.radius, 1e-3)
            self.grid = GridSpec(ranges=((-box, box), (-box, box)), res=(192, 192))


def sweep(config: SweepConfig):
    """Circuit of (p, q) samples around the configured center.

    Returns (meshes, transitions): transitions logs every change in the
    per-kind feature component counts between consecutive samples."""
    meshes = []
    counts = []
    for s in range(config.samples):
        th = 2 * math.pi * s / config.samples
        p = config.center[0] + config.radius * math.cos(th)
        q = config.center[1] + config.radius * math.sin(th)
        mesh = _sweep_sample(config.source, p, q, config.grid)
        meshes.append(mesh)
        counts.append(
            {
                "sample": s,
                "p": p,
                "q": q,
                "CuspEdge": mesh.feature_count("CuspEdge"),
                "SelfIntersection": mesh.feature_count("SelfIntersection"),
            }
        )
    transitions = []
    for s in range(config.samples):
        prev = counts[s - 1]
        cur = counts[s]
        for kind in ("CuspEdge", "SelfIntersection"):
            if prev[kind] != cur[kind]:
                transitions.append(
                    {
                        "between": (prev["sample"], cur["sample"]),
                        "kind": kind,
                        "from": prev[kind],
                        "to": cur[kind],
                        "at": (cur["p"], cur["q"]),
                    }
                )
    return meshes, {"samples": counts, "transitions": transitions}


def _sweep_sample(source, p, q, grid):
    from .special12 import SpecialFamily

    if isinstance(source, DegenNormalForm):
        return extract_degen(source, p, q, grid)
    if isinstance(source, SpecialFamily):
        fam = SpecialFamily(source.sign_s1, p, q)
        return extract_special(fam, grid)
    raise TypeError("sweep source must be a normal form or special family")


# ---------------------------------------------------------------------------
# Export


def _fmt(x):
    return "%.17g" % float(x)


def mesh_to_obj(mesh: Mesh, name="equidistant") -> str:
    lines = ["o %s" % name]
    for v in mesh.vertices:
        lines.append("v %s %s %s" % tuple(_fmt(c) for c in v))
    branch = None
    for face, tag in zip(mesh.faces, mesh.branches or [0] * len(mesh.faces)):
        if tag != branch:
            branch = tag
            lines.append("g branch%d" % tag)
        lines.append("f %d %d %d" % tuple(i + 1 for i in face))
    return "\n".join(lines) + "\n"


def features_to_csv(mesh: Mesh) -> str:
    lines = []
    for f in mesh.features:
        lines.append("# %s %s" % (f.kind, f.params))
        for x, y, z in f.points:
            lines.append("%s,%s,%s" % (_fmt(x), _fmt(y), _fmt(z)))
        lines.append("")
    return "\n".join(lines) + "\n"
