"""Twisted zeta and Hurwitz-Lerch numerics for root-of-unity twists.

Everything reduces to Hurwitz zeta over residue classes:

    phi_mu(s)           = q^-s sum_{a=1}^{q} mu^a zeta(s, a/q)
    sum mu^m (m+x)^-s   = q^-s sum_{a=0}^{q-1} mu^a zeta(s, (a+x)/q)

with mu = exp(2 pi i p/q).  A `TwistSession` carries the root powers and the
per-class Euler-Maclaurin evaluators so repeated evaluations share their log
tables.  It also serves the large-argument asymptotic row

    sum_{m>=0} mu^m (m+X)^-s  ~  X^-s [ 1 + sum_j C(-s,j) phi_mu(-j) X^-j ]

used by the mixed-sum ladder evaluators (coefficients from the cached table
of phi_mu at non-positive integers).
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

from ..errors import DomainError, NonConvergenceError
from .hurwitz import EMHurwitz


class TwistSession:
    """One root of unity exp(2 pi i p/q) at working precision wp."""

    def __init__(self, angle: Fraction, wp: int, smax: float):
        angle = Fraction(angle) % 1
        if angle == 0:
            raise DomainError("twist mu = 1 is excluded")
        self.p, self.q = angle.numerator, angle.denominator
        self.wp = wp
        self.smax = smax
        with gmpy2.context(precision=wp):
            two_pi = 2 * gmpy2.const_pi()
            self.powers = []
            for a in range(self.q):
                ang = two_pi * ((a * self.p) % self.q) / self.q
                self.powers.append(gmpy2.mpc(gmpy2.cos(ang), gmpy2.sin(ang)))
            self.mu = self.powers[1 % self.q]
            self._phi_em = [EMHurwitz(gmpy2.mpfr(a) / self.q, wp, smax)
                            for a in range(1, self.q + 1)]
            self._qlog = gmpy2.log(gmpy2.mpfr(self.q))
        self._phi_neg: list = []

    def power(self, m: int):
        return self.powers[m % self.q]

    # -- the twisted zeta phi_mu --------------------------------------------

    def phi(self, s):
        """phi_mu(s) = sum_{m>=1} mu^m m^-s (analytically continued)."""
        with gmpy2.context(precision=self.wp):
            s = gmpy2.mpc(s)
            acc = gmpy2.mpc(0)
            for a in range(1, self.q + 1):
                acc += self.power(a) * self._phi_em[a - 1].at(s)
            return gmpy2.exp(-s * self._qlog) * acc

    def phi_shifted(self, s0, shifts):
        """[phi_mu(s0 + e) for e in shifts], sharing the direct blocks."""
        with gmpy2.context(precision=self.wp):
            s0 = gmpy2.mpc(s0)
            cols = [self._phi_em[a - 1].at_shifted(s0, shifts)
                    for a in range(1, self.q + 1)]
            out = []
            for i, e in enumerate(shifts):
                acc = gmpy2.mpc(0)
                for a in range(1, self.q + 1):
                    acc += self.power(a) * cols[a - 1][i]
                out.append(gmpy2.exp(-(s0 + e) * self._qlog) * acc)
            return out

    def phi_neg_table(self, jmax: int) -> list:
        """[phi_mu(-j) for j = 0..jmax], cached; the asymptotic coefficients."""
        if len(self._phi_neg) <= jmax:
            with gmpy2.context(precision=self.wp):
                ev = [EMHurwitz(gmpy2.mpfr(a) / self.q, self.wp, jmax + 4)
                      for a in range(1, self.q + 1)]
                table = []
                for j in range(jmax + 1):
                    acc = gmpy2.mpc(0)
                    for a in range(1, self.q + 1):
                        acc += self.power(a) * ev[a - 1].at(gmpy2.mpc(-j))
                    table.append(gmpy2.exp(j * self._qlog) * acc)
            self._phi_neg = table
        return self._phi_neg[:jmax + 1]


class HurwitzLerchFixed:
    """sum_{m>=0} mu^m (m+x)^-s at fixed x off (-inf, 0], many s.

    `twist=None` degrades to the untwisted Hurwitz zeta zeta(s, x).
    """

    def __init__(self, x, wp: int, smax: float, twist: TwistSession | None):
        self.twist = twist
        self.wp = wp
        with gmpy2.context(precision=wp):
            if twist is None:
                self._em = [EMHurwitz(x, wp, smax)]
            else:
                q = twist.q
                self._em = [EMHurwitz((a + x) / q, wp, smax) for a in range(q)]
                self._qlog = gmpy2.log(gmpy2.mpfr(q))

    def at(self, s):
        with gmpy2.context(precision=self.wp):
            s = gmpy2.mpc(s)
            if self.twist is None:
                return self._em[0].at(s)
            acc = gmpy2.mpc(0)
            for a, em in enumerate(self._em):
                acc += self.twist.power(a) * em.at(s)
            return gmpy2.exp(-s * self._qlog) * acc

    def at_shifted(self, s0, shifts):
        with gmpy2.context(precision=self.wp):
            s0 = gmpy2.mpc(s0)
            if self.twist is None:
                return self._em[0].at_shifted(s0, shifts)
            cols = [em.at_shifted(s0, shifts) for em in self._em]
            out = []
            for i, e in enumerate(shifts):
                acc = gmpy2.mpc(0)
                for a in range(len(self._em)):
                    acc += self.twist.power(a) * cols[a][i]
                out.append(gmpy2.exp(-(s0 + e) * self._qlog) * acc)
            return out


def asym_row(s, X, phi_table, tol_bits: int, one_minus_mu_inv):
    """sum_{m>=0} mu^m (m+X)^-s by the large-X asymptotic expansion.

    X must dominate |s| (the adaptive loop raises NonConvergenceError when
    the terms stop decreasing before reaching 2^-tol_bits).  phi_table holds
    phi_mu(-j); one_minus_mu_inv is 1/(1-mu).
    """
    s = gmpy2.mpc(s)
    tol = gmpy2.mpfr(2) ** (-tol_bits)
    head = one_minus_mu_inv  # 1 + phi_mu(0)
    acc = gmpy2.mpc(head)
    c = gmpy2.mpc(1)
    invX = 1 / X
    xp = gmpy2.mpc(1)
    last = None
    for j in range(1, len(phi_table)):
        c = c * (-s - (j - 1)) / j
        xp = xp * invX
        term = c * phi_table[j] * xp
        acc += term
        mag = abs(term)
        if mag < tol:
            return gmpy2.exp(-s * gmpy2.log(X)) * acc
        if last is not None and mag > last * 4 and j > 8:
            raise NonConvergenceError(
                f"asymptotic row diverging at X={X}, |s|={abs(s)}")
        last = mag
    raise NonConvergenceError("asymptotic row needs a longer phi table")


# -- public contract operations ---------------------------------------------


def lerch_numeric(s, angle: Fraction, prec: int):
    """phi_mu(s) for mu = exp(2 pi i p/q) != 1, continued to all s."""
    wp = prec + 24
    with gmpy2.context(precision=wp):
        s = gmpy2.mpc(s)
        tw = TwistSession(Fraction(angle), wp, float(abs(s)) + 2)
        return tw.phi(s)


def hurwitz_lerch_numeric(s, x, angle: Fraction, prec: int):
    """sum_{m>=0} mu^m (m+x)^-s, continued; x off (-inf, 0]."""
    wp = prec + 24
    with gmpy2.context(precision=wp):
        s = gmpy2.mpc(s)
        if isinstance(x, Fraction):
            x = gmpy2.mpfr(x.numerator) / x.denominator
        tw = TwistSession(Fraction(angle), wp, float(abs(s)) + 2)
        hl = HurwitzLerchFixed(x, wp, float(abs(s)) + 2, tw)
        return hl.at(s)
