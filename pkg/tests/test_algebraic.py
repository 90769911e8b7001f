"""Exact arithmetic in small real algebraic extensions."""

import math

import pytest

from equidist.algebraic import AlgebraicField, real_root_fields
from equidist.jetcalc import UniPoly
from equidist.rationals import Q


def cbrt2_field():
    return AlgebraicField(UniPoly([Q(-2), Q(0), Q(0), Q(1)]))  # k^3 = 2


def test_field_arithmetic_matches_floats():
    F = cbrt2_field()
    k = F.generator()
    a = k * k - 3 * k + Q(1, 2)
    b = k + Q(7, 3)
    kf = 2 ** (1 / 3)
    af = kf * kf - 3 * kf + 0.5
    bf = kf + 7 / 3

    def val(e):
        return sum(float(c) * kf**i for i, c in enumerate(e.rep.c))

    assert math.isclose(val(a + b), af + bf, rel_tol=1e-12)
    assert math.isclose(val(a - b), af - bf, rel_tol=1e-12)
    assert math.isclose(val(a * b), af * bf, rel_tol=1e-12)
    assert math.isclose(val(a / b), af / bf, rel_tol=1e-12)


def test_inverse_is_exact():
    F = cbrt2_field()
    k = F.generator()
    for e in (k, k * k - 1, 5 * k * k + k - Q(1, 7)):
        assert e * e.inverse() == F.one()
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


def test_reduction_modulo_modulus():
    F = cbrt2_field()
    k = F.generator()
    assert k * k * k == 2
    assert (k * k * k * k).rep == UniPoly([Q(0), Q(2)])  # k^4 = 2k


def test_coercion_rejects_foreign_types():
    F = cbrt2_field()
    k = F.generator()
    with pytest.raises(TypeError):
        k + 1.5  # floats have no exact image in the field
    G = AlgebraicField(UniPoly([Q(-3), Q(0), Q(1)]))
    with pytest.raises(ValueError):
        k + G.generator()


def test_sign_at_root_certified():
    # modulus k^2 - 2: roots +-sqrt(2)
    F = AlgebraicField(UniPoly([Q(-2), Q(0), Q(1)]))
    pos = [iv for iv in F.real_roots() if iv[1] > 0][0]
    neg = [iv for iv in F.real_roots() if iv[1] <= 0][0]
    k = F.generator()
    assert k.sign_at_root(pos) == 1
    assert k.sign_at_root(neg) == -1
    # k^2 - 2 is exactly zero in the field
    assert (k * k - 2).sign_at_root(pos) == 0
    # a tiny but nonzero element still gets a definite sign
    tiny = k - Q(665857, 470832)  # convergent of sqrt(2), error ~ 5e-13
    assert tiny.sign_at_root(pos) == (1 if 2**0.5 > 665857 / 470832 else -1)


def test_real_root_fields_splits_rationals():
    # (x - 1/2)(x^2 - 2): one rational root, two algebraic ones
    p = UniPoly([Q(-1, 2), Q(1)]) * UniPoly([Q(-2), Q(0), Q(1)])
    rats, alg = real_root_fields(p)
    assert rats == [Q(1, 2)]
    assert len(alg) == 2
    field, _ = alg[0]
    assert field.modulus.degree == 2
    vals = sorted(
        float(sum(f.modulus.refine_root(lo, hi, Q(1, 10**9))) / 2)
        for f, (lo, hi) in alg
    )
    assert math.isclose(vals[0], -math.sqrt(2), abs_tol=1e-6)
    assert math.isclose(vals[1], math.sqrt(2), abs_tol=1e-6)


def test_real_root_fields_no_real_roots():
    rats, alg = real_root_fields(UniPoly([Q(1), Q(0), Q(1)]))
    assert rats == [] and alg == []
