"""Closed-form special values of the twisted zeta families at -N.

Four evaluators, all ring-generic over exact (cyclotomic) and numeric
(arbitrary-precision complex) coefficients:

* `value_fully_twisted`   - every index twisted, summation over all m_j >= 1;
  the expansion coefficients of the product of forms pair with twisted-zeta
  values at non-positive integers.
* `value_one_untwisted`   - exactly the last index untwisted; evaluated by the
  explicit two-part formula (a 1/(N_n+1) block plus a binomial block of
  Hurwitz-weighted coefficient sums over the rebased inner product).
* `theta_limit_value`     - last two indices untwisted; the directional limit
  value T1 + T2 + theta*T3, recursing into the two evaluators above.
* `value_power_case`      - power-sum forms, last index untwisted, summation
  over all m_j >= 1; Hurwitz factors replaced by their power-sum analogue.

The domain rebasing inside `value_one_untwisted` (and inside the fully
twisted factor of T3) produces a unit-modulus twist factor whose presence is
disputed; both candidate results are first-class outputs selected by
`variant` ("as_printed" keeps the factor at 1, "derived" applies the product
of inverse twists).  The numeric oracle adjudicates; see the verification
suite.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import gmpy2

from .bigfloat import GUARD_BITS, BigComplex, context, to_mpc
from .cyclotomic import ExactValue, FieldContext, root_of_unity
from .errors import ValidationError
from .expansion import (
    MultiIndex,
    ParameterSet,
    _off_cut,
    expand_linear_product,
    expand_power_product,
    lerch_pairing,
    shift_to_all_positive,
)
from .scalars import hurwitz_neg, lerch_neg, power_hurwitz_neg

VARIANTS = ("as_printed", "derived")


@dataclass(frozen=True)
class EvalRequest:
    """One evaluation: parameters, the point -N, variant and mode."""

    params: ParameterSet
    N: MultiIndex
    variant: str = "derived"
    mode: str = "exact"
    prec: int = 166


@dataclass
class EvalResult:
    """Value plus a provenance trace of every scalar special value consumed."""

    value: object
    variant: str | None
    mode: str
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        if isinstance(self.value, ExactValue):
            val = self.value.to_json()
        elif isinstance(self.value, BigComplex):
            val = str(self.value)
        else:
            val = str(self.value)
        return {"value": val, "mode": self.mode, "variant": self.variant,
                "trace": self.trace}


class _Workspace:
    """Per-evaluation ring strategy: exact cyclotomic or numeric complex."""

    def __init__(self, params: ParameterSet, mode: str, prec: int):
        if mode not in ("exact", "numeric"):
            raise ValidationError("mode", f"unknown mode {mode!r}")
        self.mode = mode
        self.prec = prec
        self.trace: list = []
        if mode == "exact":
            if params.mode != "exact":
                raise ValidationError("exact_inputs",
                                      "numeric parameters cannot run in exact mode")
            self.field = FieldContext(params.twist_orders_lcm())
            self.gamma = tuple(Fraction(g) for g in params.gamma)
            self.b = tuple(Fraction(x) for x in params.b)
            self.mus = tuple(root_of_unity(Fraction(a)).lift_to(self.field)
                             for a in params.mu)
        else:
            self.wp = prec + GUARD_BITS
            with context(self.wp):
                self.gamma = tuple(to_mpc(g, self.wp) for g in params.gamma)
                self.b = tuple(to_mpc(x, self.wp) for x in params.b)
                two_pi = 2 * gmpy2.const_pi()
                mus = []
                for a in params.mu:
                    ang = two_pi * (gmpy2.mpfr(Fraction(a).numerator) /
                                    Fraction(a).denominator
                                    if isinstance(a, (int, Fraction))
                                    else gmpy2.mpfr(a))
                    mus.append(gmpy2.mpc(gmpy2.cos(ang), gmpy2.sin(ang)))
                self.mus = tuple(mus)
        self._lerch_cache: dict[tuple[int, int], object] = {}

    def run_context(self):
        """Precision context for the evaluation (a no-op in exact mode)."""
        if self.mode == "numeric":
            return context(self.wp)
        return contextlib.nullcontext()

    # Every scalar special value is computed once and recorded.

    def lerch(self, j: int, k: int):
        got = self._lerch_cache.get((j, k))
        if got is None:
            got = lerch_neg(self.mus[j], k)
            self._lerch_cache[(j, k)] = got
            self.trace.append({"kind": "lerch", "twist_index": j, "k": k,
                               "value": self._fmt(got)})
        return got

    def lerch_fn(self):
        # lerch_pairing hands back what it was given as "mu"; here that is
        # the global twist index, so values are cached and traced once.
        return lambda j, k: self.lerch(j, k)

    def hurwitz(self, l: int, x):
        v = hurwitz_neg(l, x)
        self.trace.append({"kind": "hurwitz", "l": l, "a": self._fmt(x),
                           "value": self._fmt(v)})
        return v

    def power_hurwitz(self, l: int, h: int, x):
        v = power_hurwitz_neg(l, h, x)
        self.trace.append({"kind": "power_hurwitz", "l": l, "h": h,
                           "a": self._fmt(x), "value": self._fmt(v)})
        return v

    def mu_inverses(self):
        if self.mode == "exact":
            return tuple(m.inverse() for m in self.mus)
        with context(self.wp):
            return tuple(1 / m for m in self.mus)

    def normalize(self, value) -> object:
        if self.mode == "exact":
            if isinstance(value, ExactValue):
                return value
            return self.field.from_rational(Fraction(value))
        with context(self.wp):
            return BigComplex.from_mpc(to_mpc(value, self.wp), self.prec)

    @staticmethod
    def _fmt(v) -> str:
        if isinstance(v, ExactValue):
            return repr(v)
        return str(v)


def _check_point(params: ParameterSet, N: Sequence[int]) -> MultiIndex:
    N = tuple(int(v) for v in N)
    if len(N) != params.n:
        raise ValidationError("point_length", "evaluation point must have length n")
    if any(v < 0 for v in N):
        raise ValidationError("point_sign", "evaluation point must be -N with N >= 0")
    return N


def _nstar(N: MultiIndex, l: int) -> MultiIndex:
    # (N_1, ..., N_{n-2}, N_{n-1} + N_n + l); needs len(N) >= 2.
    return N[:-2] + (N[-2] + N[-1] + l,)


def _check_level_conditions(gamma, b, level_n: int) -> None:
    # Principal-branch conditions for a split at this recursion level.
    if level_n < 2:
        return
    diff = b[level_n - 1] - b[level_n - 2]
    if not _off_cut(diff):
        raise ValidationError("b_diff_on_cut",
                              f"b_{level_n} - b_{level_n - 1} on the cut",
                              level=level_n)
    if not _off_cut(diff / gamma[level_n - 1]):
        raise ValidationError("b_diff_ratio_on_cut",
                              f"(b_{level_n} - b_{level_n - 1})/gamma_{level_n} on the cut",
                              level=level_n)


def _mixed_fully_twisted(ws: _Workspace, gamma, b, mu_lo: int, N: MultiIndex,
                         variant: str):
    """Fully twisted value on the mixed domain (m_1 >= 1, rest >= 0).

    Rebases to the all->=1 domain and applies the variant prefactor; the
    twists used are ws.mus[mu_lo : mu_lo + len(N)].
    """
    r = len(N)
    if r == 0:
        return 1
    mus = ws.mus[mu_lo:mu_lo + r]
    inverses = ws.mu_inverses()[mu_lo:mu_lo + r]
    b_prime, prefs = shift_to_all_positive(gamma, b, inverses)
    poly = expand_linear_product(gamma, b_prime, N)
    paired = lerch_pairing(poly, list(range(mu_lo, mu_lo + r)), ws.lerch_fn())
    ws.trace.append({"kind": "coeff_block", "alpha": list(N),
                     "support": len(poly.terms)})
    if variant == "derived" and r >= 2:
        ws.trace.append({"kind": "prefactor", "variant": variant,
                         "value": ws._fmt(prefs["derived"])})
    return prefs[variant] * paired


def _one_untwisted_core(ws: _Workspace, gamma, b, mu_lo: int, N: MultiIndex,
                        variant: str):
    """The k = n-1 family at -N for the block (gamma, b, twists from mu_lo)."""
    n = len(N)
    if n == 1:
        # single untwisted zeta: gamma^N * zeta(-N, 1 + b/gamma)
        x = 1 + b[0] / gamma[0]
        return gamma[0] ** N[0] * ws.hurwitz(N[0], x)
    _check_level_conditions(gamma, b, n)
    x = (b[n - 1] - b[n - 2]) / gamma[n - 1]
    inverses = ws.mu_inverses()[mu_lo:mu_lo + n - 1]
    b_prime, prefs = shift_to_all_positive(gamma[:n - 1], b[:n - 1], inverses)
    g_n = gamma[n - 1]
    N_n = N[-1]

    def block(alpha: MultiIndex):
        poly = expand_linear_product(gamma[:n - 1], b_prime, alpha)
        ws.trace.append({"kind": "coeff_block", "alpha": list(alpha),
                         "support": len(poly.terms)})
        return lerch_pairing(poly, list(range(mu_lo, mu_lo + n - 1)),
                             ws.lerch_fn())

    total = block(_nstar(N, 1)) * Fraction(-1, N_n + 1) / g_n
    for l in range(N_n + 1):
        total = total + (block(_nstar(N, -l)) * comb(N_n, l)
                         * g_n ** l * ws.hurwitz(l, x))
    if variant == "derived" and n >= 3:
        ws.trace.append({"kind": "prefactor", "variant": variant,
                         "value": ws._fmt(prefs["derived"])})
    return prefs[variant] * total


def value_fully_twisted(params: ParameterSet, N: Sequence[int], *,
                        mode: str = "exact", prec: int = 166) -> EvalResult:
    """Value at -N with every index twisted, summation over all m_j >= 1."""
    if params.k_twists != params.n:
        raise ValidationError("k_range", "fully twisted evaluation needs k = n")
    N = _check_point(params, N)
    ws = _Workspace(params, mode, prec)
    with ws.run_context():
        h = params.h if params.h is not None else (1,) * params.n
        poly = expand_power_product(ws.gamma, ws.b, h, N)
        ws.trace.append({"kind": "coeff_block", "alpha": list(N),
                         "support": len(poly.terms)})
        value = lerch_pairing(poly, list(range(params.n)), ws.lerch_fn())
    return EvalResult(ws.normalize(value), None, mode, ws.trace)


def value_one_untwisted(params: ParameterSet, N: Sequence[int], *,
                        variant: str = "derived", mode: str = "exact",
                        prec: int = 166) -> EvalResult:
    """Value at -N with exactly the last index untwisted (k = n-1)."""
    if params.k_twists != params.n - 1:
        raise ValidationError("k_range", "this family needs k = n-1")
    if params.h is not None and any(hi != 1 for hi in params.h):
        raise ValidationError("h_positive",
                              "power-sum forms go through value_power_case")
    if variant not in VARIANTS:
        raise ValidationError("variant", f"unknown variant {variant!r}")
    N = _check_point(params, N)
    ws = _Workspace(params, mode, prec)
    with ws.run_context():
        value = _one_untwisted_core(ws, ws.gamma, ws.b, 0, N, variant)
    return EvalResult(ws.normalize(value), variant, mode, ws.trace)


def theta_limit_value(params: ParameterSet, N: Sequence[int], *,
                      theta=None, variant: str = "derived",
                      mode: str = "exact", prec: int = 166) -> EvalResult:
    """Directional limit value at -N with the last two indices untwisted.

    The value is affine in the direction parameter: T1 + T2 + theta * T3.
    The 1/(N_n+1) and binomial blocks recurse into the k = n-1 family one
    level down; the theta block pairs a fully twisted value over the leading
    n-2 coordinates with a single Hurwitz-type factor.
    """
    if params.k_twists != params.n - 2:
        raise ValidationError("k_range", "this family needs k = n-2")
    if variant not in VARIANTS:
        raise ValidationError("variant", f"unknown variant {variant!r}")
    N = _check_point(params, N)
    if theta is None:
        theta = params.theta
    if theta is None:
        raise ValidationError("theta", "a direction parameter theta is required")
    ws = _Workspace(params, mode, prec)
    n = params.n
    with ws.run_context():
        gamma, b = ws.gamma, ws.b
        if mode == "numeric":
            theta_r = to_mpc(theta, ws.wp)
        else:
            if not isinstance(theta, (int, Fraction)):
                raise ValidationError("theta", "exact mode needs rational theta")
            theta_r = Fraction(theta)
        x = (b[n - 1] - b[n - 2]) / gamma[n - 1]
        g_n = gamma[n - 1]
        N_n = N[-1]

        t1 = _one_untwisted_core(ws, gamma[:n - 1], b[:n - 1], 0, _nstar(N, 1),
                                 variant) * Fraction(-1, N_n + 1) / g_n
        t2 = None
        for l in range(N_n + 1):
            term = (_one_untwisted_core(ws, gamma[:n - 1], b[:n - 1], 0,
                                        _nstar(N, -l), variant)
                    * comb(N_n, l) * g_n ** l * ws.hurwitz(l, x))
            t2 = term if t2 is None else t2 + term

        w = N[-2] + N[-1] + 1
        coeff = Fraction((-1) ** (N[-2] + 1) * factorial(N[-1]) * factorial(N[-2]),
                         factorial(w))
        t3 = (_mixed_fully_twisted(ws, gamma[:n - 2], b[:n - 2], 0, N[:-2], variant)
              * coeff * ws.hurwitz(w, x) / gamma[n - 2] * g_n ** w)
        value = t1 + t2 + theta_r * t3
        ws.trace.append({"kind": "theta_block", "theta": str(theta),
                         "slope": ws._fmt(t3)})
    return EvalResult(ws.normalize(value), variant, mode, ws.trace)


def value_power_case(params: ParameterSet, N: Sequence[int], *,
                     mode: str = "exact", prec: int = 166) -> EvalResult:
    """Power-sum forms, last index untwisted.

    Summation domain: m_j >= 1 for j < n and m_n >= 0.  (The m_n >= 0 range
    is forced by the power-Hurwitz factor used in the evaluation, whose sum
    starts at 0; with every h_j = 1 this family coincides exactly with
    `value_one_untwisted` on the same parameters.)

    No rebasing of the twisted block happens here, so the result carries no
    variant prefactor; the Hurwitz factors are replaced by power-sum zeta
    values at non-positive integers, and the 1/(N_n+1) block survives only
    when the last form is genuinely linear (h_n = 1).
    """
    if params.k_twists != params.n - 1:
        raise ValidationError("k_range", "this family needs k = n-1")
    if params.h is None:
        raise ValidationError("h_positive", "power-sum evaluation needs h")
    if params.n < 2:
        raise ValidationError("n_positive", "power-sum evaluation needs n >= 2")
    N = _check_point(params, N)
    ws = _Workspace(params, mode, prec)
    n = params.n
    h = params.h
    with ws.run_context():
        gamma, b = ws.gamma, ws.b
        x = (b[n - 1] - b[n - 2]) / gamma[n - 1]
        g_n = gamma[n - 1]
        N_n = N[-1]

        def block(alpha: MultiIndex):
            poly = expand_power_product(gamma[:n - 1], b[:n - 1], h[:n - 1], alpha)
            ws.trace.append({"kind": "coeff_block", "alpha": list(alpha),
                             "support": len(poly.terms)})
            return lerch_pairing(poly, list(range(n - 1)), ws.lerch_fn())

        total = None
        if h[n - 1] == 1:
            total = block(_nstar(N, 1)) * Fraction(-1, N_n + 1) / g_n
        for l in range(N_n + 1):
            term = (block(_nstar(N, -l)) * comb(N_n, l) * g_n ** l
                    * ws.power_hurwitz(l, h[n - 1], x))
            total = term if total is None else total + term
    return EvalResult(ws.normalize(total), None, mode, ws.trace)


def special_value(params: ParameterSet, N: Sequence[int], **kw) -> EvalResult:
    """Dispatch on the number of untwisted indices (and on h)."""
    if params.k_twists == params.n:
        kw.pop("variant", None)
        return value_fully_twisted(params, N, **kw)
    if params.k_twists == params.n - 1:
        if params.h is not None and any(hi != 1 for hi in params.h):
            kw.pop("variant", None)
            return value_power_case(params, N, **kw)
        return value_one_untwisted(params, N, **kw)
    if params.k_twists == params.n - 2:
        return theta_limit_value(params, N, **kw)
    raise ValidationError("k_range",
                          "only k in {n, n-1, n-2} have closed forms here")
