"""Exact rational arithmetic helpers.

Uses gmpy2.mpq when available (much faster for the large numerators that
show up in the elimination chains), falling back to fractions.Fraction.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q  # type: ignore
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q  # type: ignore

ZERO = Q(0)
ONE = Q(1)


def rat(value) -> Q:
    """Coerce ints, rationals and strings to an exact rational.

    Strings may be integers ("7"), fractions ("22/7") or decimals
    ("0.125", parsed as an exact power-of-ten rational).
    """
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            num, den = s.split("/")
            return Q(int(num), int(den))
        if "." in s or "e" in s or "E" in s:
            mantissa, _, exp = s.partition("e" if "e" in s else "E")
            shift = int(exp) if exp else 0
            if "." in mantissa:
                whole, frac = mantissa.split(".")
                shift -= len(frac)
                mantissa = (whole or "0") + frac
            v = Q(int(mantissa))
            return v * Q(10) ** shift if shift >= 0 else v / Q(10) ** (-shift)
        return Q(int(s))
    if isinstance(value, float):
        raise TypeError("refusing inexact float %r; pass a string or rational" % value)
    return Q(value)


def rat_loose(value) -> Q:
    """Like rat, but accepts floats (converted exactly by binary value)."""
    if isinstance(value, float):
        from fractions import Fraction

        f = Fraction(value).limit_denominator(10**17)
        return Q(f.numerator, f.denominator)
    return rat(value) if isinstance(value, (int, str)) else value


def rat_str(q) -> str:
    """Canonical string form, integer when the denominator is 1."""
    q = Q(q)
    num, den = q.numerator, q.denominator
    return str(num) if den == 1 else "%d/%d" % (num, den)


def approx_rational(lo, hi, bits: int) -> Q:
    """A rational with denominator 2**bits inside [lo, hi]."""
    lo, hi = Q(lo), Q(hi)
    scale = Q(2) ** bits
    mid = (lo + hi) / 2
    n = (mid * scale).numerator // (mid * scale).denominator
    return Q(n, 1) / scale
