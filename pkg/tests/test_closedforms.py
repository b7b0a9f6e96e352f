from fractions import Fraction

import gmpy2
import pytest

from twistedzeta.closedforms import (
    special_value,
    theta_limit_value,
    value_fully_twisted,
    value_one_untwisted,
    value_power_case,
)
from twistedzeta.cyclotomic import cyclotomic_context, root_of_unity
from twistedzeta.errors import ValidationError
from twistedzeta.expansion import ParameterSet

F = Fraction


def P(n, k, gamma, b, mu=(), h=None, theta=None, mode="exact"):
    return ParameterSet(n=n, k_twists=k, gamma=tuple(F(g) for g in gamma),
                        b=tuple(F(x) for x in b), mu=tuple(F(*a) for a in mu),
                        h=h, theta=theta, mode=mode)


# -- fully twisted ----------------------------------------------------------

def test_fully_twisted_n1():
    # b*phi(0) + gamma*phi(-1) with mu = -1: -1/2 - 1/4 = -3/4
    params = P(1, 1, (1,), (1,), mu=((1, 2),))
    res = value_fully_twisted(params, (1,))
    assert res.value == F(-3, 4)


def test_fully_twisted_zero_point_is_product():
    params = P(2, 2, (1, 1), (1, 1), mu=((1, 2), (1, 4)))
    res = value_fully_twisted(params, (0, 0))
    i = root_of_unity(F(1, 4)).lift_to(cyclotomic_context(4))
    minus_one = cyclotomic_context(4).from_rational(-1)
    expected = (minus_one / (1 - minus_one)) * (i / (1 - i))
    assert res.value == expected


def test_fully_twisted_n2_rational():
    params = P(2, 2, (1, 1), (1, 1), mu=((1, 2), (1, 2)))
    res = value_fully_twisted(params, (1, 0))
    # (X1+1)^1 (X1+X2+1)^0 -> expansion {(0,0):1, (1,0):1}; both twists -1.
    # value = phi(0)^2 + phi(-1)phi(0) = 1/4 + 1/8 = 3/8
    assert res.value == F(3, 8)
    assert res.value.is_rational()


# -- one untwisted index (k = n-1) -----------------------------------------

def test_one_untwisted_base_n1():
    # zeta_{1,0}(-N) = gamma^N zeta(-N, 1 + b/gamma)
    params = P(1, 0, (1,), (1,))
    assert value_one_untwisted(params, (0,)).value == F(-3, 2)  # zeta(0,2) = 1/2-2
    assert value_one_untwisted(params, (1,)).value == F(-13, 12)
    params = P(1, 0, (2,), (1,))
    # 2^1 * zeta(-1, 3/2) = 2 * (-B_2(3/2)/2) = -(9/4 - 3/2 + 1/6) = -11/12
    assert value_one_untwisted(params, (1,)).value == F(-11, 12)


def test_one_untwisted_fixture_minus_one():
    params = P(2, 1, (1, 1), (1, 2), mu=((1, 2),))
    res = value_one_untwisted(params, (0, 0))
    assert res.value == 1
    assert any(t["kind"] == "lerch" for t in res.trace)


def test_one_untwisted_fixture_i():
    params = P(2, 1, (1, 1), (1, 2), mu=((1, 4),))
    res = value_one_untwisted(params, (0, 0))
    ctx = cyclotomic_context(4)
    i = ctx.zeta()
    assert res.value == F(5, 4) - F(3, 4) * i


def test_one_untwisted_variants_coincide_for_n2():
    params = P(2, 1, (1, 2), (1, 3), mu=((1, 3),))
    a = value_one_untwisted(params, (1, 2), variant="as_printed").value
    d = value_one_untwisted(params, (1, 2), variant="derived").value
    assert a == d


def test_one_untwisted_variants_differ_for_n3():
    params = P(3, 2, (1, 1, 1), (1, 2, 3), mu=((1, 2), (1, 3)))
    a = value_one_untwisted(params, (0, 0, 0), variant="as_printed").value
    d = value_one_untwisted(params, (0, 0, 0), variant="derived").value
    mu2_inv = 1 / root_of_unity(F(1, 3))
    assert a != d
    assert d == mu2_inv.lift_to(a.context) * a


def test_one_untwisted_numeric_matches_exact():
    params = P(2, 1, (1, 1), (1, 2), mu=((1, 4),))
    exact = value_one_untwisted(params, (2, 1)).value.embed(150).to_mpc()
    res = value_one_untwisted(params, (2, 1), mode="numeric", prec=150)
    with gmpy2.context(precision=160):
        assert abs(exact - res.value.to_mpc()) < gmpy2.mpfr(2) ** -140


# -- theta limits (k = n-2) --------------------------------------------------

def test_theta_limit_untwisted_double_zeta():
    # gamma=(1,1), b=(0,1): the classical double zeta over m < n.
    params = P(2, 0, (1, 1), (0, 1))
    for theta, want in ((F(0), F(1, 3)), (F(1), F(5, 12)), (F(1, 2), F(3, 8))):
        res = theta_limit_value(params, (0, 0), theta=theta)
        assert res.value == want


def test_theta_limit_is_affine_in_theta():
    params = P(2, 0, (1, 1), (1, 2))
    v0 = theta_limit_value(params, (1, 1), theta=F(0)).value
    v1 = theta_limit_value(params, (1, 1), theta=F(1)).value
    vhalf = theta_limit_value(params, (1, 1), theta=F(1, 2)).value
    assert vhalf - v0 == F(1, 2) * (v1 - v0)
    v3 = theta_limit_value(params, (1, 1), theta=F(7, 3)).value
    assert v3 - v0 == F(7, 3) * (v1 - v0)


def test_theta_limit_fixture_n2():
    params = P(2, 0, (1, 1), (1, 2))
    # T1 = 13/12, T2 = 3/4, slope T3 = 1/12 (hand computation)
    assert theta_limit_value(params, (0, 0), theta=F(0)).value == F(11, 6)
    assert theta_limit_value(params, (0, 0), theta=F(1)).value == F(23, 12)


def test_theta_limit_n3_runs_and_is_affine():
    params = P(3, 1, (1, 1, 1), (1, 2, 3), mu=((1, 2),))
    v0 = theta_limit_value(params, (0, 1, 0), theta=F(0)).value
    v1 = theta_limit_value(params, (0, 1, 0), theta=F(1)).value
    vq = theta_limit_value(params, (0, 1, 0), theta=F(3, 7)).value
    assert vq - v0 == F(3, 7) * (v1 - v0)


def test_theta_limit_level_conditions():
    # level n-1 = 2 needs b_2 - b_1 off the cut: b=(2,2,3) violates it there
    params = P(3, 1, (1, 1, 1), (2, 2, 3), mu=((1, 2),))
    with pytest.raises(ValidationError) as e:
        theta_limit_value(params, (0, 0, 0), theta=F(1))
    assert e.value.level == 2


# -- power case --------------------------------------------------------------

def test_power_case_fixture():
    params = P(2, 1, (1, 1), (1, 2), mu=((1, 2),), h=(1, 2))
    res = value_power_case(params, (0, 0))
    assert res.value == F(-1, 4)


def test_power_case_h_one_reduction_n2():
    # With every h_j = 1 the power-case series is the one-untwisted series on
    # the same parameters (its last index already runs from 0), so the two
    # closed forms must agree exactly.
    params_pow = P(2, 1, (1, 1), (1, 2), mu=((1, 2),), h=(1, 1))
    params_lin = P(2, 1, (1, 1), (1, 2), mu=((1, 2),))
    for N in ((0, 0), (1, 0), (1, 2), (3, 0)):
        lhs = value_power_case(params_pow, N).value
        rhs = value_one_untwisted(params_lin, N, variant="derived").value
        assert lhs == rhs


def test_power_case_h_one_reduction_n3():
    # Rebase m_2 -> m_2 + 1 (indices 2..n-1 only): b moves by gamma_2 in the
    # second and third forms and the twist monomial contributes one mu_2.
    gamma = (F(1), F(1), F(1))
    b = (F(1), F(2), F(3))
    mu = ((1, 2), (1, 3))
    params_pow = P(3, 2, gamma, b, mu=mu, h=(1, 1, 1))
    bhat = (b[0], b[1] + gamma[1], b[2] + gamma[1])
    params_lin = P(3, 2, gamma, bhat, mu=mu)
    mu2 = root_of_unity(F(1, 3))
    for N in ((0, 0, 0), (1, 0, 1), (0, 2, 0)):
        lhs = value_power_case(params_pow, N).value
        rhs = value_one_untwisted(params_lin, N, variant="derived").value
        assert lhs == mu2.lift_to(rhs.context) * rhs


def test_power_case_needs_h():
    params = P(2, 1, (1, 1), (1, 2), mu=((1, 2),))
    with pytest.raises(ValidationError):
        value_power_case(params, (0, 0))


def test_dispatch():
    assert special_value(P(1, 1, (1,), (1,), mu=((1, 2),)), (1,)).value == F(-3, 4)
    assert special_value(P(2, 1, (1, 1), (1, 2), mu=((1, 2),)), (0, 0)).value == 1
    v = special_value(P(2, 0, (1, 1), (0, 1)), (0, 0), theta=F(1, 2)).value
    assert v == F(3, 8)
