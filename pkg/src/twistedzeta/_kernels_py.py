"""Pure-Python implementations of the hot numeric kernels.

Interface mirror of the compiled module `twistedzeta._kernels`.  All
functions assume the caller has installed the desired gmpy2 context; every
value handed in is an mpfr/mpc at that precision.
"""

from __future__ import annotations

import gmpy2

BACKEND = "python"


def power_sum(s, logs):
    """sum_i exp(-s * logs[i])."""
    acc = gmpy2.mpc(0)
    neg_s = -s
    for L in logs:
        acc += gmpy2.exp(neg_s * L)
    return acc


def power_table(s, logs):
    """[exp(-s * logs[i]) for each i]."""
    neg_s = -s
    return [gmpy2.exp(neg_s * L) for L in logs]


def weighted_power_sum(s, logs, weights):
    """sum_i weights[i] * exp(-s * logs[i])."""
    acc = gmpy2.mpc(0)
    neg_s = -s
    for L, w in zip(logs, weights):
        acc += w * gmpy2.exp(neg_s * L)
    return acc


def power_sum_moments(s, logs, R):
    """[sum_i logs[i]^r exp(-s*logs[i]) for r = 0..R].

    The moments turn one pass over the table into a Taylor model in a small
    shift e of the exponent: sum_i exp(-(s+e) L_i) = sum_r (-e)^r/r! * S_r.
    """
    acc = [gmpy2.mpc(0) for _ in range(R + 1)]
    neg_s = -s
    for L in logs:
        t = gmpy2.exp(neg_s * L)
        acc[0] += t
        for r in range(1, R + 1):
            t = t * L
            acc[r] += t
    return acc


def clenshaw(coeffs, t):
    """Chebyshev series sum_k c_k T_k(t) by the Clenshaw recurrence."""
    b1 = gmpy2.mpc(0)
    b2 = gmpy2.mpc(0)
    two_t = 2 * t
    for c in reversed(coeffs[1:]):
        b1, b2 = two_t * b1 - b2 + c, b1
    return t * b1 - b2 + coeffs[0]
