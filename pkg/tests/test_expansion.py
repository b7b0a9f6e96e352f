import random
from fractions import Fraction

import pytest

from twistedzeta.cyclotomic import root_of_unity
from twistedzeta.errors import ValidationError
from twistedzeta.expansion import (
    ParameterSet,
    SparsePoly,
    apply_gamma_powers,
    expand_linear_product,
    expand_power_product,
    lerch_pairing,
    shift_to_all_positive,
    strip_gamma_powers,
)

F = Fraction


def test_linear_expansion_basics():
    # n=1, alpha=(1): gamma_1 X_1 + b_1
    p = expand_linear_product((F(3),), (F(5),), (1,))
    assert p.terms == {(0,): F(5), (1,): F(3)}
    # empty exponent vector: the constant 1
    p = expand_linear_product((F(3), F(2)), (F(5), F(7)), (0, 0))
    assert p.terms == {(0, 0): F(1)}


def test_linear_expansion_hand_product():
    # (X1 + 1)(X1 + X2 + 2) = X1^2 + X1 X2 + 3 X1 + X2 + 2
    p = expand_linear_product((F(1), F(1)), (F(1), F(2)), (1, 1))
    assert p.terms == {
        (2, 0): F(1), (1, 1): F(1), (1, 0): F(3), (0, 1): F(1), (0, 0): F(2),
    }


def test_power_expansion():
    # h=(2), alpha=(1): gamma X^2 + b
    p = expand_power_product((F(2),), (F(3),), (2,), (1,))
    assert p.terms == {(0,): F(3), (2,): F(2)}
    # (X1 + X2^2 + 2): only the second factor, alpha=(0,1)
    p = expand_power_product((F(1), F(1)), (F(1), F(2)), (1, 2), (0, 1))
    assert p.terms == {(0, 2): F(1), (1, 0): F(1), (0, 0): F(2)}
    # h = all ones reduces to the linear expansion
    a = expand_power_product((F(1), F(2)), (F(1), F(3)), (1, 1), (2, 1))
    assert a == expand_linear_product((F(1), F(2)), (F(1), F(3)), (2, 1))


def test_expansion_matches_direct_product_evaluation():
    rng = random.Random(99)
    for _ in range(50):
        n = rng.randint(1, 4)
        alpha = [rng.randint(0, 3) for _ in range(n)]
        while sum(alpha) > 6:
            alpha[rng.randrange(n)] = max(0, alpha[rng.randrange(n)] - 1)
        gamma = [F(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
        b = [F(rng.randint(-3, 5), rng.randint(1, 4)) for _ in range(n)]
        h = [rng.randint(1, 3) for _ in range(n)]
        x = [F(rng.randint(-4, 4), rng.randint(1, 5)) for _ in range(n)]
        poly = expand_power_product(gamma, b, h, alpha)
        direct = F(1)
        for j in range(n):
            form = b[j] + sum(gamma[i] * x[i] ** h[i] for i in range(j + 1))
            direct *= form ** alpha[j]
        assert poly.evaluate(x) == direct
        # support bound |k| <= |alpha| in the linear case
        lin = expand_linear_product(gamma, b, alpha)
        assert all(sum(k) <= sum(alpha) for k in lin.support())


def test_strip_apply_gamma_roundtrip():
    rng = random.Random(5)
    gamma = [F(2), F(3, 2), F(5)]
    terms = {}
    for _ in range(12):
        k = tuple(rng.randint(0, 4) for _ in range(3))
        terms[k] = F(rng.randint(-9, 9), rng.randint(1, 9))
    p = SparsePoly(3, terms)
    assert apply_gamma_powers(strip_gamma_powers(p, gamma), gamma) == p
    assert strip_gamma_powers(SparsePoly(1, {(1,): F(7)}), [F(7)]).terms == {(1,): F(1)}
    ones = [F(1), F(1), F(1)]
    assert strip_gamma_powers(p, ones) == p


def test_shift_to_all_positive():
    # n=2 block: no shifted entries, both variants trivial
    bp, pref = shift_to_all_positive((F(1),), (F(1),), (None,))
    assert bp == (F(1),) and pref["as_printed"] == 1 and pref["derived"] == 1

    mu2_inv = 1 / root_of_unity(F(1, 3))
    bp, pref = shift_to_all_positive((F(1), F(1)), (F(1), F(2)), (None, mu2_inv))
    assert bp == (F(1), F(1))
    assert pref["as_printed"] == 1
    assert pref["derived"] == mu2_inv


def test_lerch_pairing_small():
    minus_one = root_of_unity(F(1, 2))
    # constant polynomial pairs to prod mu/(1-mu)
    p = SparsePoly(1, {(0,): F(1)})
    assert lerch_pairing(p, [minus_one]) == F(-1, 2)
    # n=1 linear case b + gamma*X with mu=-1: b*phi(0) + gamma*phi(-1)
    p = SparsePoly(1, {(0,): F(1), (1,): F(1)})
    assert lerch_pairing(p, [minus_one]) == F(-3, 4)


def test_parameter_validation():
    good = ParameterSet(n=2, k_twists=1, gamma=(F(1), F(1)), b=(F(1), F(2)),
                        mu=(F(1, 2),))
    assert good.last_shift_ratio() == 1

    with pytest.raises(ValidationError) as e:
        ParameterSet(n=2, k_twists=1, gamma=(F(-1), F(1)), b=(F(1), F(2)),
                     mu=(F(1, 2),))
    assert e.value.condition == "re_gamma_positive"

    with pytest.raises(ValidationError) as e:
        ParameterSet(n=2, k_twists=1, gamma=(F(1), F(1)), b=(F(1), F(1)),
                     mu=(F(1, 2),))
    assert e.value.condition == "b_diff_on_cut"

    # fully twisted family does not split off its last variable: b=(1,1) legal
    ParameterSet(n=2, k_twists=2, gamma=(F(1), F(1)), b=(F(1), F(1)),
                 mu=(F(1, 2), F(1, 2)))

    with pytest.raises(ValidationError) as e:
        ParameterSet(n=1, k_twists=1, gamma=(F(1),), b=(F(1),), mu=(F(3),))
    assert e.value.condition == "mu_is_one"

    with pytest.raises(ValidationError) as e:
        ParameterSet(n=1, k_twists=0, gamma=(F(1),), b=(F(-1),))
    assert e.value.condition == "re_b_lower_bound"
    ParameterSet(n=1, k_twists=0, gamma=(F(1),), b=(F(-1, 2),))
    ParameterSet(n=1, k_twists=0, gamma=(F(1),), b=(F(0),))

    with pytest.raises(ValidationError):
        ParameterSet(n=2, k_twists=1, gamma=(F(1), F(1)), b=(F(1), F(2)),
                     mu=(F(1, 2),), h=(1, 0))


def test_parameter_json_roundtrip():
    ps = ParameterSet(n=2, k_twists=1, gamma=(F(1), F(2)), b=(F(1), F(5, 2)),
                      mu=(F(1, 4),), h=(1, 2), theta=F(1, 2))
    obj = ps.to_json()
    assert obj["gamma"] == ["1/1", "2/1"]
    back = ParameterSet.from_json(obj)
    assert back == ps

    with pytest.raises(ValidationError):
        ParameterSet.from_json({"n": 1, "k": 1, "gamma": ["1/1"], "b": ["1/1"],
                                "mu": [0.25], "mode": "exact"})
    num = ParameterSet.from_json({"n": 1, "k": 1, "gamma": ["1/1"], "b": ["1/1"],
                                  "mu": [0.2], "mode": "numeric"})
    assert num.mode == "numeric"
