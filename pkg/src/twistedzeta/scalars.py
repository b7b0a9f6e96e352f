"""Closed-form scalar special values.

Bernoulli numbers and polynomials, Stirling numbers of the second kind, and
the analytically continued values at non-positive integers of the Riemann,
Hurwitz, twisted (Lerch), and power-Hurwitz zeta functions.

All functions are ring-generic: arguments may be Fractions, cyclotomic
`ExactValue`s, or gmpy2 complex numbers; results stay in the same ring.
Rational coefficients are applied as `x * p / q` so no ring ever needs to
coerce a Fraction directly.

Caches grow on demand and are never evicted; indices in scope are tiny.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DomainError

_bernoulli: list[Fraction] = [Fraction(1)]


def bernoulli_number(k: int) -> Fraction:
    """B_k in the x/(e^x - 1) convention, so B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    while len(_bernoulli) <= k:
        m = len(_bernoulli)
        # sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * _bernoulli[j]
        _bernoulli.append(-acc / (m + 1))
    return _bernoulli[k]


_bernoulli_poly: dict[int, tuple[Fraction, ...]] = {}


def bernoulli_poly_coeffs(k: int) -> tuple[Fraction, ...]:
    """Coefficients (low -> high) of B_k(x) = sum_j C(k,j) B_j x^(k-j)."""
    got = _bernoulli_poly.get(k)
    if got is None:
        got = tuple(comb(k, k - i) * bernoulli_number(k - i) for i in range(k + 1))
        _bernoulli_poly[k] = got
    return got


def bernoulli_poly_eval(k: int, a):
    """B_k(a); `a` may be Fraction, ExactValue, or a complex float."""
    coeffs = bernoulli_poly_coeffs(k)
    acc = a * 0 + coeffs[-1]  # promote the constant into a's ring
    for c in reversed(coeffs[:-1]):
        acc = acc * a
        if c:
            acc = acc + c
    return acc


_stirling_rows: list[list[int]] = [[1]]


def stirling2(n: int, l: int) -> int:
    """S(n, l): partitions of an n-set into l nonempty blocks."""
    if n < 0 or l < 0:
        raise ValueError("indices must be non-negative")
    while len(_stirling_rows) <= n:
        m = len(_stirling_rows)
        prev = _stirling_rows[m - 1]
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            row[j] = j * (prev[j] if j < len(prev) else 0) + prev[j - 1]
        _stirling_rows.append(row)
    row = _stirling_rows[n]
    return row[l] if l < len(row) else 0


def riemann_neg(m: int) -> Fraction:
    """zeta(-m) for m >= 0; equals -B_{m+1}(1)/(m+1) (so zeta(0) = -1/2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    b = bernoulli_number(m + 1)
    if m == 0:
        b = Fraction(1, 2)  # B_1(1) = +1/2
    return -b / (m + 1)


def _is_nonpositive_integer(a) -> bool:
    if isinstance(a, (int, Fraction)):
        a = Fraction(a)
        return a.denominator == 1 and a <= 0
    if hasattr(a, "is_rational"):  # ExactValue
        if not a.is_rational():
            return False
        q = a.as_rational()
        return q.denominator == 1 and q <= 0
    # complex float carriers
    try:
        re, im = a.real, a.imag
    except AttributeError:
        return False
    return im == 0 and re <= 0 and re == int(re)


def hurwitz_neg(l: int, a):
    """zeta(-l, a) = -B_{l+1}(a)/(l+1); the Hurwitz parameter excludes -N_0."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if _is_nonpositive_integer(a):
        raise DomainError("Hurwitz parameter must not be a non-positive integer")
    return -bernoulli_poly_eval(l + 1, a) / (l + 1)


def lerch_neg(mu, n: int):
    """phi_mu(-n) for the twisted zeta phi_mu(s) = sum_{m>=1} mu^m m^(-s).

    Uses the Stirling-number closed form
        phi_mu(-n) = (-1)^n mu/(1-mu) * sum_{l=0}^{n} l! S(n,l) / (mu-1)^l,
    valid for any mu != 1 on the unit circle; exact when mu is an exact root
    of unity, a complex float otherwise.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    one_minus = 1 - mu
    if one_minus == 0:
        raise DomainError("twist mu = 1 is excluded")
    t = 1 / (mu - 1)
    acc = mu * 0
    tpow = acc + 1
    fact = 1
    for l in range(n + 1):
        if l:
            tpow = tpow * t
            fact *= l
        s = stirling2(n, l)
        if s:
            acc = acc + tpow * (fact * s)
    sign = -1 if n % 2 else 1
    return (mu / one_minus) * acc * sign


def power_hurwitz_neg(l: int, h: int, b):
    """zeta(-l, h, b) for zeta(s,h,b) = sum_{m>=0} (m^h + b)^(-s).

    h >= 2:  b^l + sum_{j=0}^{l} C(l,j) zeta(h(j-l)) b^j  (the contour term
    vanishes at s = -l).  h = 1 is routed through the Hurwitz closed form,
    since the naive truncation misses a pole/binomial cancellation there.
    """
    if l < 0 or h < 1:
        raise ValueError("need l >= 0 and h >= 1")
    _check_off_cut(b)
    if h == 1:
        return hurwitz_neg(l, b)
    acc = b * 0 + 1
    for _ in range(l):
        acc = acc * b
    total = acc  # b^l
    bj = b * 0 + 1
    for j in range(l + 1):
        if j:
            bj = bj * b
        z = riemann_neg(h * (l - j))
        if z:
            total = total + bj * (comb(l, j) * z)
    return total


def _check_off_cut(b) -> None:
    if isinstance(b, (int, Fraction)):
        if b <= 0:
            raise DomainError("parameter lies on the cut (-inf, 0]")
        return
    if hasattr(b, "is_rational"):
        if b.is_rational() and b.as_rational() <= 0:
            raise DomainError("parameter lies on the cut (-inf, 0]")
        return
    try:
        re, im = b.real, b.imag
    except AttributeError:
        return
    if im == 0 and re <= 0:
        raise DomainError("parameter lies on the cut (-inf, 0]")
