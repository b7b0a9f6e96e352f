"""Direct summation of the zeta families inside the convergence domain.

Plain nested summation over a finite box with per-level truncation bounds.
For real positive parameters the summand magnitude decreases in every index,
so each level's tail admits an integral-test bound; the bound is taken on
the *absolute* series (twists replaced by 1), which dominates the twisted
tail.  No analytic-continuation machinery is involved; this is the blunt
instrument the contour method is checked against.

Summation domains by family (matching the evaluated objects):
  linear forms, any number of twists:  m_1 >= 1, the rest >= 0;
  power-sum forms, k = n-1:            m_j >= 1 for j < n, m_n >= 0;
  power-sum forms, k = n:              all m_j >= 1.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

from ..bigfloat import to_mpc, to_mpfr
from ..errors import DomainError, NonConvergenceError
from ..expansion import ParameterSet


def _domain_margin(n: int, s) -> float:
    # min over j of Re(s_j + ... + s_n) - (n + 1 - j)
    margin = float("inf")
    acc = 0.0
    for j in range(n, 0, -1):
        acc += float(s[j - 1].real)
        margin = min(margin, acc - (n + 1 - j))
    return margin


def domain_lower_bounds(params: ParameterSet) -> list[int]:
    n = params.n
    if params.h is None or all(hi == 1 for hi in params.h):
        return [1] + [0] * (n - 1)
    if params.k_twists == n:
        return [1] * n
    return [1] * (n - 1) + [0]


def mzeta_series(params: ParameterSet, s, prec: int, *, margin_min: float = 1.5):
    """Brute-force series value at s strictly inside the convergence domain.

    Requires every partial exponent sum to clear its convergence line by at
    least `margin_min` (raises DomainError otherwise) and real positive
    gamma, real b.  The result carries absolute error below 2^-prec against
    the integral-test truncation bounds, or NonConvergenceError is raised.
    """
    wp = prec + 28
    with gmpy2.context(precision=wp):
        s_v = [to_mpc(x, wp) for x in s]
        if len(s_v) != params.n:
            raise DomainError("need one s_j per index")
        n = params.n
        margin = _domain_margin(n, s_v)
        if margin < margin_min:
            raise DomainError(
                f"point too close to the convergence boundary (margin {margin:.3f})")
        for g in params.gamma:
            if not isinstance(g, (int, Fraction)) or g <= 0:
                raise DomainError("direct summation assumes real positive gamma")
        for x in params.b:
            if not isinstance(x, (int, Fraction)):
                raise DomainError("direct summation assumes real b")
        gamma = [to_mpfr(Fraction(g), wp) for g in params.gamma]
        b = [to_mpfr(Fraction(x), wp) for x in params.b]
        h = params.h if params.h is not None else (1,) * n
        sig = [float(x.real) for x in s_v]
        dec = [sum(sig[j:]) for j in range(n)]  # decay exponent in m_j
        tol = gmpy2.mpfr(2) ** (-prec - 2)

        two_pi = 2 * gmpy2.const_pi()
        mus = []
        for a in params.mu:
            ang = two_pi * (gmpy2.mpfr(Fraction(a).numerator) / Fraction(a).denominator
                            if isinstance(a, (int, Fraction)) else gmpy2.mpfr(a))
            mus.append(gmpy2.mpc(gmpy2.cos(ang), gmpy2.sin(ang)))

        digits = (prec + 8) * 0.30103
        R = []
        for j in range(n):
            d = dec[j] * h[j]
            if d <= 1.3:
                raise DomainError("insufficient decay for direct summation")
            R.append(max(6, int(10 ** (digits / (d - 1))) + 4))
        lo = domain_lower_bounds(params)

        def level(j: int, partial, weight_abs):
            # returns (value with twists, absolute majorant, tail bound)
            acc = gmpy2.mpc(0)
            acc_abs = gmpy2.mpfr(0)
            tail = gmpy2.mpfr(0)
            m = lo[j]
            while True:
                base = gamma[j] * gmpy2.mpfr(m) ** h[j]
                forms = [partial[i] + base if i >= j else partial[i]
                         for i in range(n)]
                if j == n - 1:
                    mag = weight_abs * gmpy2.exp(-sig[j] * gmpy2.log(forms[j] + b[j]))
                    term = gmpy2.exp(-s_v[j] * gmpy2.log(forms[j] + b[j]))
                    sub, sub_abs, sub_tail = term, mag, gmpy2.mpfr(0)
                else:
                    wa = weight_abs * gmpy2.exp(-sig[j] * gmpy2.log(forms[j] + b[j]))
                    inner, inner_abs, inner_tail = level(j + 1, forms, wa)
                    term = gmpy2.exp(-s_v[j] * gmpy2.log(forms[j] + b[j])) * inner
                    sub, sub_abs, sub_tail = term, inner_abs, inner_tail
                if j < params.k_twists:
                    sub = sub * mus[j] ** m
                acc += sub
                acc_abs += sub_abs
                tail += sub_tail
                if m >= R[j] + lo[j]:
                    d = dec[j] * h[j]
                    tail += sub_abs * (m + 1) / (d - 1)
                    break
                m += 1
            return acc, acc_abs, tail

        total, _, tail = level(0, [gmpy2.mpfr(0)] * n, gmpy2.mpfr(1))
        if not tail <= tol * 2 + abs(total) * gmpy2.mpfr(2) ** (-prec + 2):
            raise NonConvergenceError(
                f"truncation bound {tail} above tolerance; "
                "move the point deeper into the domain")
        return total
