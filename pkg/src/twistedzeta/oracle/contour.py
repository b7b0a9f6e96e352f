"""Vertical-line quadrature and Chebyshev models of contour factors.

The Mellin-Barnes integrands decay like exp(-r|Im z|) with r = pi minus the
largest parameter argument, and are analytic in a strip of half-width 1/2
around the contour (the pole lattice is integer-spaced), so the plain
trapezoid rule converges geometrically in 1/h.  The step is predicted from
the strip width and verified by comparing against the half-rate subsample;
the estimate is squared-safe for geometric convergence, and refinement
reuses every node already computed.

`ChebModel` interpolates a factor g(x0 + iy) along the truncated line by a
Chebyshev series in y.  All our inner factors are entire or have known pole
offsets, so a modest ellipse parameter gives geometric coefficient decay;
fitted models also accept slightly complex y, which is how one model serves
a whole ladder of shifted evaluation points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2

from ..errors import NonConvergenceError
from ..kernels import clenshaw


@dataclass
class ContourSpec:
    """Overrides for the contour quadrature; None means auto-selected.

    abscissa: real part of the line (defaults to shift_depth + 1/2 or + 1/3);
    height: truncation T of |Im z|; nodes: initial trapezoid node count;
    shift_depth: how many residue columns are collected before the line.
    """

    abscissa: float | None = None
    height: float | None = None
    nodes: int | None = None
    shift_depth: int | None = None


def auto_height(tol_bits: int, rate: float, poly_order: float) -> float:
    """Truncation height with exp(-rate*T) * T^poly_order below target."""
    target_ln = tol_bits * math.log(2) + 6
    T = max(8.0, target_ln / rate)
    for _ in range(3):
        T = (target_ln + poly_order * math.log(T + 4)) / rate
    return 1.15 * T


def auto_step(tol_bits: int, strip: float = 0.42) -> float:
    """Trapezoid step for discretization error 2^-tol_bits in that strip."""
    return 2 * math.pi * strip / (tol_bits * math.log(2) + 8)


def integrate_line(f, T: float, h: float, tol, *, max_halvings: int = 2,
                   vector_len: int | None = None):
    """(1/2pi) * integral over y in [-T, T] of f(y) dy by trapezoid steps.

    `f` may return a single mpc or a list (batched evaluation); the return
    is (values, err_estimate) with matching shape.  The first estimate
    compares against the 2h-subsample; since convergence is geometric the
    true error is roughly the square of that difference (a conservative
    factor is kept), and a halving is triggered only when the safe bound
    misses `tol`.
    """
    n = max(8, int(math.ceil(2 * T / h)))
    if n % 2:
        n += 1
    Tm = gmpy2.mpfr(T)
    hm = 2 * Tm / n
    ys = [(-Tm + k * hm) for k in range(n + 1)]
    vals = [f(y) for y in ys]
    scalar = vector_len is None

    def total(step):
        E = 1 if scalar else vector_len
        acc = [gmpy2.mpc(0)] * E
        for idx in range(0, n + 1, step):
            v = vals[idx]
            row = [v] if scalar else v
            wgt = 1 if 0 < idx < n else 0.5
            for e in range(E):
                acc[e] += wgt * row[e]
        sh = hm * step
        return [a * sh / (2 * gmpy2.const_pi()) for a in acc]

    for halving in range(max_halvings + 1):
        fine = total(1)
        coarse = total(2)
        diff = max(abs(a - b) for a, b in zip(fine, coarse))
        # geometric convergence: err(h) ~ err(2h)^2 / scale
        scale = max(max(abs(a) for a in fine), gmpy2.mpfr(1))
        est = min(diff, diff * diff / scale) * 64
        if est <= tol or diff <= tol / 4:
            return (fine[0] if scalar else fine), est
        # refine: insert midpoints, halve h
        newvals = []
        for k in range(n):
            newvals.append(vals[k])
            newvals.append(f(-Tm + (2 * k + 1) * hm / 2))
        newvals.append(vals[n])
        vals = newvals
        n *= 2
        hm = hm / 2
    raise NonConvergenceError(
        f"contour quadrature stalled at estimate {est} (tol {tol})")


class ChebModel:
    """Chebyshev fit of g(y) on [-T, T], evaluable at slightly complex y."""

    def __init__(self, coeffs, T, wp):
        self.coeffs = coeffs
        self.T = T
        self.wp = wp

    @classmethod
    def fit(cls, g, T: float, tol, wp: int, n0: int = 48, nmax: int = 3072,
            probes: int = 3):
        """Adaptive fit: double the node count until the trailing
        coefficients fall below tol, then validate at interior points."""
        with gmpy2.context(precision=wp):
            Tm = gmpy2.mpfr(T)
            n = n0
            cache: dict[int, object] = {}

            def node_val(k: int, n: int):
                # nodes at cos(pi k / n) scaled by T; reuse across doublings
                key = (k * nmax) // n
                got = cache.get(key)
                if got is None:
                    y = Tm * gmpy2.cos(gmpy2.const_pi() * k / n)
                    got = g(y)
                    cache[key] = got
                return got

            while n <= nmax:
                vals = [node_val(k, n) for k in range(n + 1)]
                coeffs = _dct_coeffs(vals, n)
                tail = max(abs(c) for c in coeffs[-max(6, n // 16):])
                if tail <= tol:
                    model = cls(_trim(coeffs, tol), T, wp)
                    ok = True
                    for i in range(probes):
                        y = Tm * (2 * gmpy2.mpfr(i + 1) / (probes + 1.3) - 1) * 0.997
                        if abs(model.eval(y) - g(y)) > tol * 32:
                            ok = False
                            break
                    if ok:
                        return model
                n *= 2
        raise NonConvergenceError(f"Chebyshev fit did not settle below {tol}")

    def eval(self, y):
        t = y / self.T
        return clenshaw(self.coeffs, gmpy2.mpc(t))


def _dct_coeffs(vals, n):
    # Chebyshev coefficients from values at y_k = T cos(pi k / n); O(n^2).
    pi = gmpy2.const_pi()
    cosines = [gmpy2.cos(pi * k / n) for k in range(2 * n)]
    coeffs = []
    for j in range(n + 1):
        acc = (vals[0] + (-1) ** j * vals[n]) / 2
        for k in range(1, n):
            acc += vals[k] * cosines[(j * k) % (2 * n)]
        c = acc * 2 / n
        coeffs.append(c / 2 if j in (0, n) else c)
    return coeffs


def _trim(coeffs, tol):
    cut = len(coeffs)
    while cut > 8 and abs(coeffs[cut - 1]) < tol / 4:
        cut -= 1
    return coeffs[:cut]
