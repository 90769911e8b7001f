"""Small real algebraic extensions Q[k]/(m(k)) with certified signs.

Only what the elimination chains need: degree <= 3 moduli (cubics with
their rational roots stripped first are irreducible), exact field
arithmetic, and sign determination of an element at a chosen real root
by interval refinement.  An element is exactly zero iff its residue is
the zero polynomial, so refinement always terminates for sign queries.
"""

from __future__ import annotations

from .jetcalc import UniPoly, rational_roots
from .rationals import Q


class AlgebraicField:
    def __init__(self, modulus: UniPoly):
        modulus = modulus.scale_monic()
        if modulus.degree < 1:
            raise ValueError("modulus must be nonconstant")
        self.modulus = modulus
        self.degree = modulus.degree

    def element(self, coeffs):
        rem = UniPoly(list(coeffs)) % self.modulus
        return FieldElement(self, rem)

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def generator(self):
        return self.element([0, 1])

    def real_roots(self):
        """Isolating intervals for the real roots of the modulus."""
        return self.modulus.isolate_real_roots()

    def __repr__(self):
        return "AlgebraicField(%r)" % (self.modulus,)


class FieldElement:
    __slots__ = ("field", "rep")

    def __init__(self, field, rep: UniPoly):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field.modulus != self.field.modulus:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, int) or type(other) is type(Q(0)):
            return FieldElement(self.field, UniPoly([other]))
        raise TypeError("cannot coerce %r into %r" % (type(other), self.field))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, self.rep - other.rep)

    def __rsub__(self, other):
        try:
            return self._coerce(other) - self
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, (self.rep * other.rep) % self.field.modulus)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.rep == other.rep

    def inverse(self):
        if not self.rep:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in Q[x]
        r0, r1 = self.field.modulus, self.rep
        t0, t1 = UniPoly([]), UniPoly([1])
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        # r0 = gcd, a nonzero constant since the modulus is irreducible
        inv_lead = 1 / r0.c[0]
        return FieldElement(self.field, (t0 * inv_lead) % self.field.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __repr__(self):
        return "FieldElement(%r)" % (self.rep.c,)

    def interval_value(self, lo, hi):
        """Enclosure of rep evaluated over [lo, hi] (interval Horner)."""
        vlo = vhi = Q(0)
        for a in reversed(self.rep.c):
            products = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
            vlo, vhi = min(products) + a, max(products) + a
        return vlo, vhi

    def sign_at_root(self, root_interval, max_iters=20000):
        """Exact sign of this element at the modulus root isolated by
        root_interval; 0 only when the element is exactly zero."""
        if not self.rep:
            return 0
        lo, hi = root_interval
        m = self.field.modulus.squarefree()
        slo = m.sign_at(lo)
        for _ in range(max_iters):
            vlo, vhi = self.interval_value(lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            mid = (lo + hi) / 2
            smid = m.sign_at(mid)
            if smid == 0:
                # root hit exactly; evaluate nearby with a symmetric shrink
                lo, hi = mid - (hi - lo) / 8, mid + (hi - lo) / 8
                continue
            if smid == slo:
                lo = mid
            else:
                hi = mid
        raise RuntimeError("sign refinement did not converge")


def real_root_fields(p: UniPoly, max_den=10**6):
    """Split the real roots of p into exact rationals and algebraic ones.

    Returns (rational_roots, [(field, isolating_interval), ...]); the
    fields share one modulus (the rational-root-free cofactor of p)."""
    rats = rational_roots(p, max_den)
    cof = p
    for r in rats:
        while cof.degree >= 1 and not cof.eval(r):
            cof = cof.divmod(UniPoly([-r, 1]))[0]
    algebraic = []
    if cof.degree >= 1 and cof.count_real_roots():
        field = AlgebraicField(cof)
        for iv in field.real_roots():
            algebraic.append((field, iv))
    return rats, algebraic
