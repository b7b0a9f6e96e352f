import random
from fractions import Fraction

import gmpy2
import pytest

from twistedzeta.cyclotomic import (
    ContextMismatchError,
    ExactValue,
    FieldContext,
    FieldDivisionError,
    cyclotomic_context,
    cyclotomic_polynomial,
    lift_to_common_context,
    root_of_unity,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)          # x^2 + 1
    assert cyclotomic_polynomial(6) == (1, -1, 1)         # x^2 - x + 1
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)  # x^4 - x^2 + 1


def test_degree_is_totient():
    for L, phi in [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (8, 4),
                   (9, 6), (12, 4), (24, 8)]:
        assert cyclotomic_context(L).degree == phi


def test_zeta4_squares_to_minus_one():
    ctx = cyclotomic_context(4)
    i = ctx.zeta()
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2


def test_inverse_of_zeta3():
    ctx = cyclotomic_context(3)
    z = ctx.zeta()
    inv = 1 / z
    # 1/zeta_3 = zeta_3^2 = -1 - zeta_3 modulo x^2 + x + 1
    assert inv == ExactValue(ctx, (Fraction(-1), Fraction(-1)))
    assert inv * z == 1


def test_division_by_zero_raises():
    ctx = cyclotomic_context(4)
    with pytest.raises(FieldDivisionError):
        ctx.zero().inverse()


def test_context_mismatch_raises():
    a = cyclotomic_context(3).zeta()
    b = cyclotomic_context(4).zeta()
    with pytest.raises(ContextMismatchError):
        _ = a + b


def test_lift_zeta2_into_L4():
    z2 = cyclotomic_context(2).zeta()
    lifted = z2.lift_to(cyclotomic_context(4))
    assert lifted == -1


def test_lift_to_common_context():
    z3 = cyclotomic_context(3).zeta()
    z4 = cyclotomic_context(4).zeta()
    a, b = lift_to_common_context([z3, z4])
    ctx12 = cyclotomic_context(12)
    assert a.context is ctx12 and b.context is ctx12
    assert a == ctx12.zeta(4)
    assert b == ctx12.zeta(3)
    # semantics preserved numerically
    assert abs((a.embed(128) - z3.embed(128)).to_mpc()) < gmpy2.mpfr(2) ** -120
    assert abs((b.embed(128) - z4.embed(128)).to_mpc()) < gmpy2.mpfr(2) ** -120


def test_lift_rational_is_constant_vector():
    ctx = cyclotomic_context(1)
    v = ctx.from_rational(Fraction(5, 4)).lift_to(cyclotomic_context(8))
    assert v.is_rational() and v.as_rational() == Fraction(5, 4)


def test_embed_basics():
    i = cyclotomic_context(4).zeta().embed(256)
    assert abs(i.real) < gmpy2.mpfr(2) ** -250
    assert abs(i.imag - 1) < gmpy2.mpfr(2) ** -250

    v = cyclotomic_context(1).from_rational(Fraction(5, 4)).embed(128)
    assert v.real == 1.25 and v.imag == 0

    # (1 + zeta_3)/2 = 1/4 + (sqrt(3)/4) i
    z = ((1 + cyclotomic_context(3).zeta()) / 2).embed(192)
    with gmpy2.context(precision=200):
        assert abs(z.real - Fraction(1, 4)) < gmpy2.mpfr(2) ** -180
        assert abs(z.imag - gmpy2.sqrt(3) / 4) < gmpy2.mpfr(2) ** -180
    # (1 + zeta_6)/2 = 3/4 + (sqrt(3)/4) i
    z6 = ((1 + cyclotomic_context(6).zeta()) / 2).embed(192)
    with gmpy2.context(precision=200):
        assert abs(z6.real - Fraction(3, 4)) < gmpy2.mpfr(2) ** -180
        assert abs(z6.imag - gmpy2.sqrt(3) / 4) < gmpy2.mpfr(2) ** -180


def _random_value(rng, ctx):
    return ExactValue(ctx, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 7))
                                 for _ in range(ctx.degree)))


def test_embedding_is_a_homomorphism():
    rng = random.Random(20240811)
    prec = 160
    tol = gmpy2.mpfr(2) ** (-prec + 16)
    for L in (3, 4, 5, 6, 8, 12, 24):
        ctx = cyclotomic_context(L)
        for _ in range(6):
            a = _random_value(rng, ctx)
            b = _random_value(rng, ctx)
            ea, eb = a.embed(prec).to_mpc(), b.embed(prec).to_mpc()
            with gmpy2.context(precision=prec):
                assert abs((a + b).embed(prec).to_mpc() - (ea + eb)) < tol
                assert abs((a - b).embed(prec).to_mpc() - (ea - eb)) < tol
                assert abs((a * b).embed(prec).to_mpc() - (ea * eb)) < tol
                if not b.is_zero():
                    assert abs((a / b).embed(prec).to_mpc() - (ea / eb)) < tol


def test_mul_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(200):
        L = rng.choice([2, 3, 4, 5, 6, 8, 12])
        ctx = cyclotomic_context(L)
        a = _random_value(rng, ctx)
        if a.is_zero():
            continue
        assert a * (1 / a) == 1
        assert (a - a).is_zero()


def test_json_roundtrip():
    ctx = cyclotomic_context(12)
    v = ExactValue(ctx, (Fraction(1, 2), Fraction(-3), Fraction(0), Fraction(7, 5)))
    obj = v.to_json()
    assert obj["L"] == 12 and len(obj["coeffs"]) == 4
    assert ExactValue.from_json(obj) == v


def test_root_of_unity():
    assert root_of_unity(Fraction(1, 2)) == -1
    mu = root_of_unity(Fraction(1, 4))
    assert mu * mu == -1
    assert root_of_unity(Fraction(5, 4)) == mu  # reduced mod 1
