"""Truncated multivariate polynomial algebra and real-root machinery.

Everything here is exact: coefficients are rationals (or elements of a
small algebraic extension, see algebraic.py) and truncation is the only
approximation, by design.  Floating point enters only when a caller asks
for refined numeric values of isolated roots.
"""

from __future__ import annotations

from .rationals import Q, rat

# ---------------------------------------------------------------------------
# TruncPoly


class TruncPoly:
    """Multivariate polynomial truncated at a total degree.

    coeffs maps exponent tuples to nonzero coefficients.  Optional per-
    variable degree caps tighten truncation beyond the total-degree order
    (used by the long elimination chains to keep intermediate jets small).
    """

    __slots__ = ("vars", "order", "coeffs", "caps")

    def __init__(self, vars, order, coeffs=None, caps=None):
        self.vars = tuple(vars)
        self.order = int(order)
        self.caps = tuple(caps) if caps is not None else None
        cleaned = {}
        if coeffs:
            for expo, c in coeffs.items():
                if c and self._keep(expo):
                    cleaned[tuple(expo)] = c
        self.coeffs = cleaned

    # -- construction helpers

    @classmethod
    def zero(cls, vars, order, caps=None):
        return cls(vars, order, {}, caps)

    @classmethod
    def const(cls, vars, order, value, caps=None):
        value = value if not isinstance(value, (int, str)) else rat(value)
        zero = (0,) * len(vars)
        return cls(vars, order, {zero: value}, caps)

    @classmethod
    def variable(cls, name, vars, order, caps=None):
        expo = tuple(1 if v == name else 0 for v in vars)
        if 1 not in expo:
            raise KeyError("unknown variable %r" % name)
        return cls(vars, order, {expo: Q(1)}, caps)

    def _keep(self, expo):
        if sum(expo) > self.order:
            return False
        if self.caps is not None:
            return all(e <= c for e, c in zip(expo, self.caps))
        return True

    def _like(self, coeffs):
        return TruncPoly(self.vars, self.order, coeffs, self.caps)

    # -- ring operations

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("variable mismatch: %r vs %r" % (self.vars, other.vars))

    def __add__(self, other):
        if not isinstance(other, TruncPoly):
            other = TruncPoly.const(self.vars, self.order, other, self.caps)
        self._check(other)
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            s = out.get(expo, 0) + c
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncPoly):
            other = TruncPoly.const(self.vars, self.order, other, self.caps)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncPoly):
            if not other:
                return self._like({})
            return self._like({e: c * other for e, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                if not self._keep(expo):
                    continue
                s = out.get(expo, 0) + c1 * c2
                if s:
                    out[expo] = s
                else:
                    del out[expo]
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = TruncPoly.const(self.vars, self.order, Q(1), self.caps)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.vars == other.vars and self.coeffs == other.coeffs
        return self.coeffs == TruncPoly.const(self.vars, self.order, other).coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for expo in sorted(self.coeffs, key=lambda e: (sum(e), e)):
            mono = "*".join(
                v if p == 1 else "%s^%d" % (v, p)
                for v, p in zip(self.vars, expo)
                if p
            )
            c = self.coeffs[expo]
            bits.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)

    # -- structure access

    def coefficient(self, **powers):
        """Coefficient (a TruncPoly in the remaining variables' monomials)
        of the given pure monomial, e.g. p.coefficient(s1=2, u2=1)."""
        target = {v: powers.get(v, None) for v in self.vars}
        out = {}
        for expo, c in self.coeffs.items():
            keep = True
            new = []
            for v, e in zip(self.vars, expo):
                want = target[v]
                if want is None:
                    new.append(e)
                elif e != want:
                    keep = False
                    break
                else:
                    new.append(0)
            if keep:
                out[tuple(new)] = c
        return self._like(out)

    def scalar(self):
        """The constant term."""
        return self.coeffs.get((0,) * len(self.vars), Q(0))

    def monomial_coeff(self, expo):
        return self.coeffs.get(tuple(expo), Q(0))

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.coeffs), default=0)

    def total_degree(self):
        return max((sum(e) for e in self.coeffs), default=0)

    def min_degree(self):
        return min((sum(e) for e in self.coeffs), default=0)

    def graded_part(self, degree):
        return self._like({e: c for e, c in self.coeffs.items() if sum(e) == degree})

    def drop_pure(self, names):
        """Remove monomials that involve ONLY the named variables
        (including the constant term)."""
        idx = [self.vars.index(n) for n in names]
        others = [i for i in range(len(self.vars)) if i not in idx]
        out = {
            e: c
            for e, c in self.coeffs.items()
            if any(e[i] for i in others)
        }
        return self._like(out)

    def diff(self, name):
        i = self.vars.index(name)
        out = {}
        for expo, c in self.coeffs.items():
            if expo[i]:
                new = list(expo)
                new[i] -= 1
                out[tuple(new)] = c * expo[i]
        return self._like(out)

    def map_coeffs(self, fn):
        return self._like({e: fn(c) for e, c in self.coeffs.items()})

    def with_order(self, order, caps=None):
        return TruncPoly(self.vars, order, self.coeffs, caps)

    def rename(self, vars):
        if len(vars) != len(self.vars):
            raise ValueError("rename must preserve arity")
        return TruncPoly(vars, self.order, self.coeffs, self.caps)

    def evaluate(self, **values):
        """Full evaluation; every variable must be bound to a scalar."""
        vals = [values[v] for v in self.vars]
        total = 0
        for expo, c in self.coeffs.items():
            term = c
            for v, e in zip(vals, expo):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def to_unipoly(self):
        """Convert when at most one variable actually occurs."""
        live = [i for i in range(len(self.vars)) if any(e[i] for e in self.coeffs)]
        if len(live) > 1:
            raise ValueError("polynomial is genuinely multivariate")
        i = live[0] if live else 0
        deg = max((e[i] for e in self.coeffs), default=0)
        out = [Q(0)] * (deg + 1)
        for expo, c in self.coeffs.items():
            out[expo[i]] = c
        return UniPoly(out)


def substitute(p: TruncPoly, bindings, allow_const=False) -> TruncPoly:
    """Compose p with variable replacements, truncated at p's order.

    Replacements must have zero constant term unless allow_const is set
    (constant shifts such as k -> k0 + z legitimately need it, but they
    break degree-based truncation soundness, so the caller opts in).
    """
    repl = {}
    for name, expr in bindings.items():
        if name not in p.vars:
            raise KeyError("binding for unknown variable %r" % name)
        if not isinstance(expr, TruncPoly):
            expr = TruncPoly.const(p.vars, p.order, expr, p.caps)
        else:
            expr = TruncPoly(p.vars, p.order, expr.coeffs, p.caps)
        if expr.scalar() and not allow_const:
            raise ValueError("replacement for %r has a constant term" % name)
        repl[name] = expr
    images = []
    for v in p.vars:
        if v in repl:
            images.append(repl[v])
        else:
            images.append(TruncPoly.variable(v, p.vars, p.order, p.caps))
    out = TruncPoly.zero(p.vars, p.order, p.caps)
    # cache powers of each image
    powers = [{0: TruncPoly.const(p.vars, p.order, Q(1), p.caps)} for _ in images]

    def power(i, n):
        cache = powers[i]
        if n not in cache:
            cache[n] = power(i, n - 1) * images[i]
        return cache[n]

    for expo, c in p.coeffs.items():
        term = TruncPoly.const(p.vars, p.order, c, p.caps)
        for i, e in enumerate(expo):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


class SubstitutionRecord:
    """An ordered list of (var, replacement) steps, composable and
    (for near-identity steps) invertible by fixed-point iteration."""

    def __init__(self, steps=None):
        self.steps = list(steps or [])

    def then(self, var, replacement):
        return SubstitutionRecord(self.steps + [(var, replacement)])

    def apply(self, p: TruncPoly) -> TruncPoly:
        for var, expr in self.steps:
            p = substitute(p, {var: expr})
        return p

    def unapply(self, p: TruncPoly) -> TruncPoly:
        for var, expr in reversed(self.steps):
            v = TruncPoly.variable(var, expr.vars, expr.order, expr.caps)
            delta = expr - v  # the step was var -> var + delta
            inv = v
            for _ in range(p.order + 1):
                inv = v - substitute(delta, {var: inv})
            p = substitute(p, {var: inv})
        return p


class DegenerateSquare(ValueError):
    pass


def complete_square(p: TruncPoly, v: str):
    """Eliminate every monomial containing v except c*v^2.

    Returns (reduced polynomial, SubstitutionRecord).  Requires a nonzero
    rational v^2 coefficient (evaluating the other variables at zero).
    """
    expo2 = tuple(2 if name == v else 0 for name in p.vars)
    c = p.coeffs.get(expo2, Q(0))
    if not c:
        raise DegenerateSquare("zero %s^2 coefficient" % v)
    iv = p.vars.index(v)
    var = TruncPoly.variable(v, p.vars, p.order, p.caps)
    record = SubstitutionRecord()
    cumulative = var
    for _ in range(p.order + 2):
        offending = p._like(
            {
                e: cc
                for e, cc in p.coeffs.items()
                if e[iv] >= 1 and e != expo2
            }
        )
        if not offending:
            break
        # p = c v^2 + v*A + (v-free);  shift v by -A/(2c)
        a_over_v = p._like(
            {
                tuple(ee - (1 if i == iv else 0) for i, ee in enumerate(e)): cc
                for e, cc in offending.coeffs.items()
            }
        )
        shift = a_over_v * (Q(-1) / (2 * c))
        p = substitute(p, {v: var + shift})
        cumulative = substitute(cumulative, {v: var + shift})
    else:
        raise DegenerateSquare("square completion did not converge in %s" % v)
    record = record.then(v, cumulative)
    return p, record


# ---------------------------------------------------------------------------
# UniPoly and real roots


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [rat(x) if isinstance(x, (int, str)) else x for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = c

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.c == other.c

    def __repr__(self):
        return "UniPoly(%s)" % (self.c,)

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + [Q(0)] * (n - len(self.c))
        b = other.c + [Q(0)] * (n - len(other.c))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + [Q(0)] * (n - len(self.c))
        b = other.c + [Q(0)] * (n - len(other.c))
        return UniPoly([x - y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-x for x in self.c])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([x * other for x in self.c])
        if not self.c or not other.c:
            return UniPoly([])
        out = [Q(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def scale_monic(self):
        if not self.c:
            return self
        lead = self.c[-1]
        return UniPoly([x / lead for x in self.c])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Q(0)] * max(0, len(rem) - len(other.c) + 1)
        dlead = other.c[-1]
        while len(rem) >= len(other.c) and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) < len(other.c):
                break
            k = len(rem) - len(other.c)
            f = rem[-1] / dlead
            q[k] = f
            for i, b in enumerate(other.c):
                rem[k + i] -= f * b
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self):
        return UniPoly([i * a for i, a in enumerate(self.c)][1:])

    def eval(self, x):
        total = Q(0)
        for a in reversed(self.c):
            total = total * x + a
        return total

    def eval_float(self, x):
        total = 0.0
        for a in reversed(self.c):
            total = total * x + float(a)
        return total

    def sign_at(self, x):
        v = self.eval(x)
        return (v > 0) - (v < 0)

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.scale_monic() if a else a

    def squarefree(self):
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def compose_shift(self, s):
        """p(x+s) by synthetic division."""
        c = list(self.c)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += s * c[j + 1]
        return UniPoly(c)

    # -- Sturm machinery

    def sturm_chain(self):
        chain = [self.squarefree()]
        chain.append(chain[0].derivative())
        while chain[-1]:
            r = chain[-2] % chain[-1]
            if not r:
                break
            chain.append(-r)
        return [p for p in chain if p]

    @staticmethod
    def _variations(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def _sturm_at(self, chain, x):
        return self._variations([p.sign_at(x) for p in chain])

    def _sturm_at_inf(self, chain, positive):
        signs = []
        for p in chain:
            s = (p.c[-1] > 0) - (p.c[-1] < 0)
            if not positive and p.degree % 2 == 1:
                s = -s
            signs.append(s)
        return self._variations(signs)

    def count_roots_in(self, lo, hi):
        """Distinct real roots in (lo, hi]."""
        chain = self.sturm_chain()
        return self._sturm_at(chain, lo) - self._sturm_at(chain, hi)

    def count_real_roots(self):
        if self.degree <= 0:
            return 0
        chain = self.sturm_chain()
        return self._sturm_at_inf(chain, False) - self._sturm_at_inf(chain, True)

    def root_bound(self):
        """Cauchy bound: all real roots lie in (-B, B)."""
        if self.degree <= 0:
            return Q(1)
        lead = self.c[-1]
        m = max(abs(a / lead) for a in self.c[:-1]) if self.degree else Q(0)
        return Q(1) + m

    def isolate_real_roots(self):
        """Disjoint open-closed intervals (lo, hi], one distinct root each."""
        sf = self.squarefree()
        if sf.degree <= 0:
            return []
        chain = sf.sturm_chain()
        bound = sf.root_bound()
        out = []

        def split(lo, hi, n):
            if n == 0:
                return
            if n == 1:
                out.append((lo, hi))
                return
            mid = (lo + hi) / 2
            left = sf._sturm_at(chain, lo) - sf._sturm_at(chain, mid)
            split(lo, mid, left)
            split(mid, hi, n - left)

        total = sf._sturm_at(chain, -bound) - sf._sturm_at(chain, bound)
        split(-bound, bound, total)
        return out

    def refine_root(self, lo, hi, width):
        """Bisect an isolating (lo, hi] interval until hi-lo <= width.

        Keeps the invariant sign(lo) != sign(hi) (treating an exact zero
        at an endpoint as found)."""
        sf = self.squarefree()
        slo = sf.sign_at(lo)
        if slo == 0:
            return lo, lo
        while hi - lo > width:
            mid = (lo + hi) / 2
            smid = sf.sign_at(mid)
            if smid == 0:
                return mid, mid
            if smid == slo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def multiplicity_at_interval(self, lo, hi):
        """Multiplicity of the single root of self in (lo, hi], counted
        through the layers of gcd(p, p')."""
        m = 0
        p = self
        while p.degree > 0 and p.squarefree().count_roots_in(lo, hi) == 1:
            m += 1
            g = p.gcd(p.derivative())
            if g.degree <= 0:
                break
            p = g
        return max(m, 1)


class RootSet:
    """Isolated real roots of a univariate polynomial."""

    def __init__(self, poly: UniPoly):
        self.poly = poly
        self.intervals = poly.isolate_real_roots()
        self.multiplicities = [
            poly.multiplicity_at_interval(lo, hi) for lo, hi in self.intervals
        ]

    @property
    def count(self):
        return len(self.intervals)

    def refined(self, width):
        w = rat(width) if isinstance(width, (int, str)) else width
        return [self.poly.refine_root(lo, hi, w) for lo, hi in self.intervals]

    def floats(self, width=Q(1, 10**15)):
        return [float((lo + hi) / 2) for lo, hi in self.refined(width)]


def count_real_roots(p: UniPoly):
    """(number of distinct real roots, RootSet)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    rs = RootSet(p)
    return rs.count, rs


def rational_roots(p: UniPoly, max_den=10**6):
    """Exact rational roots found by interval reconstruction.

    Each isolated root interval is refined and a continued-fraction
    convergent of the midpoint is tested exactly; misses nothing with a
    denominator within max_den."""
    out = []
    for lo, hi in p.isolate_real_roots():
        lo, hi = p.refine_root(lo, hi, Q(1, max_den**2 * 4))
        cand = _reconstruct_rational((lo + hi) / 2, max_den)
        for x in cand:
            if lo <= x <= hi or x == lo or x == hi:
                if not p.eval(x):
                    out.append(x)
                    break
    return out


def _reconstruct_rational(x, max_den):
    """Continued-fraction convergents of x with denominator <= max_den."""
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    v = x
    for _ in range(80):
        a = v.numerator // v.denominator
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            break
        out.append(Q(p1, q1))
        frac = v - a
        if not frac:
            break
        v = 1 / frac
    return out


# ---------------------------------------------------------------------------
# Resultants


def resultant(p: TruncPoly, q: TruncPoly, var: str) -> TruncPoly:
    """Sylvester resultant of p and q as polynomials in var.

    Coefficients (TruncPoly in the remaining variables) are combined by a
    division-free minor expansion, so truncation never corrupts exactness
    as long as the ambient order accommodates the product degrees."""
    if not p or not q:
        raise ValueError("resultant of a zero polynomial")
    iv = p.vars.index(var)

    def coeff_list(poly):
        deg = poly.degree_in(var)
        out = []
        for k in range(deg + 1):
            out.append(
                poly._like(
                    {
                        tuple(0 if i == iv else e for i, e in enumerate(expo)): c
                        for expo, c in poly.coeffs.items()
                        if expo[iv] == k
                    }
                )
            )
        return out

    a = coeff_list(p)
    b = coeff_list(q)
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return TruncPoly.const(p.vars, p.order, Q(1), p.caps)
    size = m + n
    # Sylvester matrix rows: n shifted copies of a (reversed), m of b.
    rows = []
    for i in range(n):
        row = [TruncPoly.zero(p.vars, p.order, p.caps)] * size
        for j, cf in enumerate(reversed(a)):
            row[i + j] = cf
        rows.append(row)
    for i in range(m):
        row = [TruncPoly.zero(p.vars, p.order, p.caps)] * size
        for j, cf in enumerate(reversed(b)):
            row[i + j] = cf
        rows.append(row)
    return _det(rows)


def _det(rows):
    """Determinant by expansion over column subsets (memoized Laplace)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    memo = {}

    def minor(r, colmask):
        if r == n:
            return 1
        key = colmask
        if key in memo.get(r, {}):
            return memo[r][key]
        total = None
        sign = 1
        for c in range(n):
            bit = 1 << c
            if colmask & bit:
                continue
            cell = rows[r][c]
            if cell:
                sub = minor(r + 1, colmask | bit)
                term = cell * sub * sign if not isinstance(sub, int) else cell * sign * sub
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = rows[0][0]._like({})
        memo.setdefault(r, {})[key] = total
        return total

    return minor(0, 0)
