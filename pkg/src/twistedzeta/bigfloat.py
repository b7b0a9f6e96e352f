"""Arbitrary-precision complex floats with explicit working precision.

Thin layer over gmpy2's mpfr/mpc.  Library internals work with raw gmpy2
values inside an explicit precision context; `BigComplex` is the public
carrier used at API boundaries (embeddings, oracle results, JSON output).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

#: Guard bits carried above every requested precision (see embed_numeric).
GUARD_BITS = 32

MIN_PRECISION = 64


def context(prec: int) -> gmpy2.context:
    """A gmpy2 context computing at `prec` bits; use as a context manager."""
    return gmpy2.context(precision=prec)


def to_mpfr(x, prec: int) -> gmpy2.mpfr:
    """Convert int/Fraction/float/mpfr to mpfr at the given precision."""
    with context(prec):
        if isinstance(x, Fraction):
            return gmpy2.mpfr(x.numerator) / gmpy2.mpfr(x.denominator)
        return gmpy2.mpfr(x)


def to_mpc(x, prec: int) -> gmpy2.mpc:
    """Convert a real/complex scalar (incl. Fraction, BigComplex) to mpc."""
    with context(prec):
        if isinstance(x, BigComplex):
            return gmpy2.mpc(x.real, x.imag)
        if isinstance(x, Fraction):
            return gmpy2.mpc(gmpy2.mpfr(x.numerator) / gmpy2.mpfr(x.denominator))
        return gmpy2.mpc(x)


@dataclass(frozen=True)
class BigComplex:
    """Complex float whose working precision is part of the value.

    Arithmetic results carry the minimum precision of the operands;
    precision is never widened implicitly.
    """

    real: gmpy2.mpfr
    imag: gmpy2.mpfr
    precision: int

    @classmethod
    def from_mpc(cls, z: gmpy2.mpc, prec: int) -> "BigComplex":
        with context(prec):
            z = gmpy2.mpc(z)
        return cls(z.real, z.imag, prec)

    @classmethod
    def from_value(cls, x, prec: int) -> "BigComplex":
        return cls.from_mpc(to_mpc(x, prec), prec)

    def to_mpc(self) -> gmpy2.mpc:
        with context(self.precision):
            return gmpy2.mpc(self.real, self.imag)

    def _binary(self, other, op) -> "BigComplex":
        if isinstance(other, BigComplex):
            prec = min(self.precision, other.precision)
            zo = other.to_mpc()
        else:
            prec = self.precision
            zo = to_mpc(other, prec)
        with context(prec):
            return BigComplex.from_mpc(op(self.to_mpc(), zo), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.real, self.imag * -1, self.precision)

    def __abs__(self) -> gmpy2.mpfr:
        with context(self.precision):
            return abs(self.to_mpc())

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __str__(self) -> str:
        return f"{self.real}{'+' if self.imag >= 0 else '-'}{abs(self.imag)}j"

    def distance(self, other) -> gmpy2.mpfr:
        """|self - other| at the coarser of the two precisions."""
        diff = self - other
        return abs(diff)
