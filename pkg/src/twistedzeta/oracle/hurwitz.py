"""Euler-Maclaurin evaluation of the Hurwitz zeta function.

    zeta(s, a) = sum_{m<K} (m+a)^{-s} + (K+a)^{1-s}/(s-1) + (K+a)^{-s}/2
                 + sum_{j<=J} B_{2j}/(2j)! (s)_{2j-1} (K+a)^{-s-2j+1} + E,

with K, J sized so the first omitted correction term (the standard tail
bound up to a small factor) is below 2^-wp relative to the leading scale.
Valid for any complex s != 1 and any a off (-inf, 0].

`EMHurwitz` fixes `a` once, precomputes the log table of the direct block,
and then evaluates cheaply for many s -- the access pattern of the contour
quadrature.  `at_shifted` additionally reuses one pass of the direct block
for a whole ladder of tiny shifts s0 + eps via log-moments.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

from ..errors import DomainError, NonConvergenceError
from ..kernels import power_sum, power_sum_moments
from ..scalars import bernoulli_number
from .gammafn import _is_nonpositive_int

_bern_cache: dict[int, list] = {}


def _bern_over_fact(wp: int, J: int):
    # [B_{2j}/(2j)! as mpfr for j = 1..J+1]
    got = _bern_cache.get(wp)
    if got is None or len(got) < J + 1:
        with gmpy2.context(precision=wp + 20):
            got = []
            fact = 1
            for j in range(1, J + 2):
                fact *= (2 * j) * (2 * j - 1)
                q = bernoulli_number(2 * j) / fact
                got.append(gmpy2.mpfr(q.numerator) / q.denominator)
        _bern_cache[wp] = got
    return got[:J + 1]


class EMHurwitz:
    """zeta(s, a) for one fixed parameter a and many s with |s| <= smax."""

    def __init__(self, a, wp: int, smax: float):
        if _is_nonpositive_int(gmpy2.mpc(a)):
            raise DomainError("Hurwitz parameter in -N_0")
        if a.real <= 0 and getattr(a, "imag", 0) == 0:
            raise DomainError("Hurwitz parameter on the cut (-inf, 0]")
        self.wp = wp
        self.smax = smax
        self.a = a
        J = max(6, int(0.125 * wp) + 2)
        # |s + 2J| / (2 pi (K + Re a)) <= 1/4 makes the correction terms
        # decay at least like 4^{-2j}
        K = max(4, int(0.64 * (smax + 2 * J) - float(a.real)) + 1,
                int(2 - float(a.real)))
        self.K = K
        self.J = J
        self.logs = [gmpy2.log(m + a) for m in range(K)]
        self.edge = K + a            # K + a
        self.log_edge = gmpy2.log(self.edge)
        self.inv_edge2 = 1 / (self.edge * self.edge)
        self.bq = _bern_over_fact(wp, J)

    def _tail(self, s, edge_pow):
        # edge_pow = (K+a)^{-s}; returns boundary + correction terms + est
        acc = edge_pow * self.edge / (s - 1) + edge_pow / 2
        poch = s
        t = edge_pow / self.edge  # (K+a)^{-s-1}
        for j in range(self.J):
            term = self.bq[j] * poch * t
            acc += term
            poch = poch * (s + (2 * j + 1)) * (s + (2 * j + 2))
            t = t * self.inv_edge2
        est = abs(self.bq[self.J] * poch * t)
        return acc, est

    def at(self, s):
        """zeta(s, a) as mpc; raises on the pole s = 1."""
        if s == 1:
            raise DomainError("Hurwitz zeta pole at s = 1")
        s = gmpy2.mpc(s)
        direct = power_sum(s, self.logs)
        edge_pow = gmpy2.exp(-s * self.log_edge)
        tail, est = self._tail(s, edge_pow)
        value = direct + tail
        self._check(est, value, s)
        return value

    def at_shifted(self, s0, shifts):
        """[zeta(s0 + e, a) for e in shifts] with one direct-block pass.

        All |e| must be below ~1e-3; the direct block becomes a Taylor model
        via log-moments while boundary and correction terms are recomputed
        per shift (they are a few operations each).
        """
        s0 = gmpy2.mpc(s0)
        if not shifts:
            return []
        emax = max(abs(gmpy2.mpc(e)) for e in shifts)
        if emax == 0:
            v = self.at(s0)
            return [v] * len(shifts)
        # R terms make (emax * log(K+a))^R / R! < 2^-wp
        x = emax * abs(self.log_edge)
        R = 4
        bound = x ** 4 / 24
        while bound > gmpy2.mpfr(2) ** (-self.wp - 8) and R < 60:
            R += 1
            bound = bound * x / R
        moments = power_sum_moments(s0, self.logs, R)
        out = []
        for e in shifts:
            e = gmpy2.mpc(e)
            s = s0 + e
            if s == 1:
                raise DomainError("Hurwitz zeta pole at s = 1")
            direct = gmpy2.mpc(0)
            fac = gmpy2.mpc(1)
            for r in range(R + 1):
                direct += fac * moments[r]
                fac = fac * (-e) / (r + 1)
            edge_pow = gmpy2.exp(-s * self.log_edge)
            tail, est = self._tail(s, edge_pow)
            value = direct + tail
            self._check(est, value, s)
            out.append(value)
        return out

    def _check(self, est, value, s):
        scale = max(abs(value), gmpy2.mpfr(1))
        if not est <= scale * gmpy2.mpfr(2) ** (-self.wp + 6):
            raise NonConvergenceError(
                f"Euler-Maclaurin tail {est} too large for |s|<={self.smax} "
                f"(got s={s}); enlarge smax")


def hurwitz_numeric(s, a, prec: int):
    """zeta(s, a) at `prec` bits for complex s (s != 1), a off (-inf, 0]."""
    wp = prec + 24
    with gmpy2.context(precision=wp):
        if isinstance(a, Fraction):
            a = gmpy2.mpfr(a.numerator) / a.denominator
        a = a if isinstance(a, (gmpy2.mpfr, gmpy2.mpc)) else gmpy2.mpc(a)
        s = gmpy2.mpc(s)
        ev = EMHurwitz(a, wp, float(abs(s)) + 2)
        return ev.at(s)


def riemann_numeric(s, prec: int):
    """zeta(s) = zeta(s, 1)."""
    return hurwitz_numeric(s, gmpy2.mpfr(1), prec)
