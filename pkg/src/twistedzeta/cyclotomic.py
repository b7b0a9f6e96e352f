"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are represented canonically by their coordinate vector in the power
basis 1, zeta_L, ..., zeta_L^(phi(L)-1) modulo the L-th cyclotomic polynomial,
so equality is coefficient-wise.  Mixed-order arithmetic requires an explicit
lift (`lift_to_common_context`); silent coercion between contexts is an error.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .bigfloat import GUARD_BITS, BigComplex, context

Rational = Fraction


class ContextMismatchError(ValueError):
    """Arithmetic between values over different cyclotomic contexts."""


class FieldDivisionError(ZeroDivisionError):
    """Division by the zero element of the field."""


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # Exact division of integer polynomials, coefficients low -> high.
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % lead:
            raise ArithmeticError("division is not exact")
        q = c // lead
        out[i - dd] = q
        for j, d in enumerate(den):
            num[i - dd + j] -= q * d
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return out


_cyclo_cache: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Integer coefficients (low -> high) of the L-th cyclotomic polynomial.

    Computed by exact division of x^L - 1 by the product of Phi_d over the
    proper divisors d of L.
    """
    if L < 1:
        raise ValueError("order must be a positive integer")
    got = _cyclo_cache.get(L)
    if got is not None:
        return got
    poly = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    result = tuple(poly)
    _cyclo_cache[L] = result
    return result


def _totient(L: int) -> int:
    out = L
    n = L
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


class FieldContext:
    """The field Q(zeta_L): root-of-unity order, minimal polynomial, degree."""

    __slots__ = ("L", "phi_L", "degree")

    _instances: dict[int, "FieldContext"] = {}

    def __new__(cls, L: int):
        inst = cls._instances.get(L)
        if inst is not None:
            return inst
        inst = object.__new__(cls)
        inst.L = L
        inst.phi_L = cyclotomic_polynomial(L)
        inst.degree = len(inst.phi_L) - 1
        assert inst.degree == _totient(L)
        cls._instances[L] = inst
        return inst

    def __repr__(self):
        return f"FieldContext(L={self.L}, degree={self.degree})"

    def zero(self) -> "ExactValue":
        return ExactValue(self, (Fraction(0),) * self.degree)

    def one(self) -> "ExactValue":
        return self.from_rational(1)

    def from_rational(self, q) -> "ExactValue":
        coeffs = [Fraction(q)] + [Fraction(0)] * (self.degree - 1)
        return ExactValue(self, tuple(coeffs))

    def zeta(self, power: int = 1) -> "ExactValue":
        """zeta_L^power as an element of this context."""
        return ExactValue(self, _reduce_power(power % self.L, self))


def cyclotomic_context(L: int) -> FieldContext:
    return FieldContext(L)


def _reduce_mod_phi(coeffs: list[Fraction], ctx: FieldContext) -> tuple[Fraction, ...]:
    # Polynomial remainder modulo the monic phi_L, low -> high coefficients.
    deg = ctx.degree
    phi = ctx.phi_L
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        q = c[i]
        if q:
            for j in range(deg + 1):
                c[i - deg + j] -= q * phi[j]
    out = c[:deg]
    out += [Fraction(0)] * (deg - len(out))
    return tuple(out)


def _reduce_power(e: int, ctx: FieldContext) -> tuple[Fraction, ...]:
    mono = [Fraction(0)] * e + [Fraction(1)]
    return _reduce_mod_phi(mono, ctx)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_ext_gcd(a: list[Fraction], b: list[Fraction]):
    # Extended Euclid over Q[x]; returns (g, u, v) with u*a + v*b = g.
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        inv = 1 / den[-1]
        for i in range(len(num) - 1, len(den) - 2, -1):
            c = num[i] * inv
            q[i - len(den) + 1] = c
            if c:
                for j, d in enumerate(den):
                    num[i - len(den) + 1 + j] -= c * d
        return trim(q), trim(num)

    r0, r1 = trim(list(a)), trim(list(b))
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, trim([x - y for x, y in _zip_pad(u0, _poly_mul(q, u1) if q and u1 else [])])
        v0, v1 = v1, trim([x - y for x, y in _zip_pad(v0, _poly_mul(q, v1) if q and v1 else [])])
    return r0, u0, v0


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


class ExactValue:
    """An element of Q(zeta_L), canonical coordinates modulo phi_L.

    Immutable; supports +, -, *, / (by nonzero elements) and mixed arithmetic
    with ints and Fractions.  Values over different contexts must be lifted
    explicitly first.
    """

    __slots__ = ("context", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Sequence[Fraction]):
        if len(coeffs) != ctx.degree:
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "context", ctx)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("ExactValue is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ExactValue):
            if other.context is not self.context:
                raise ContextMismatchError(
                    f"contexts L={self.context.L} and L={other.context.L}; "
                    "lift to a common context first")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ExactValue(self.context,
                          tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExactValue(self.context, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prod = _poly_mul(self.coeffs, o.coeffs)
        return ExactValue(self.context, _reduce_mod_phi(prod, self.context))

    __rmul__ = __mul__

    def inverse(self) -> "ExactValue":
        if self.is_zero():
            raise FieldDivisionError("inverse of zero")
        a = list(self.coeffs)
        phi = [Fraction(c) for c in self.context.phi_L]
        g, u, _ = _poly_ext_gcd(a, phi)
        if len(g) != 1:
            raise ArithmeticError("element not invertible modulo phi_L")
        scale = 1 / g[0]
        inv = [c * scale for c in u]
        return ExactValue(self.context, _reduce_mod_phi(inv, self.context))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.context.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, ExactValue):
            return NotImplemented
        return self.context is other.context and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.context.L, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.context.L}^{i}" if i > 1 else f"{c}*z{self.context.L}")
        return " + ".join(terms) if terms else "0"

    # -- conversions --------------------------------------------------------

    def lift_to(self, ctx: FieldContext) -> "ExactValue":
        """Re-express this value in Q(zeta_M) for L | M via zeta_L = zeta_M^(M/L)."""
        if ctx is self.context:
            return self
        if ctx.L % self.context.L:
            raise ContextMismatchError(
                f"cannot lift from L={self.context.L} to L={ctx.L}")
        step = ctx.L // self.context.L
        out = ctx.zero()
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * ctx.zeta(i * step)
        return out

    def embed(self, prec: int) -> BigComplex:
        """Numerical value at zeta_L = exp(2*pi*i/L), to `prec` bits.

        Internally evaluated with GUARD_BITS extra bits, then rounded, so the
        result error is below 2**(-prec) up to a few ulps.
        """
        if prec < 64:
            raise ValueError("precision must be at least 64 bits")
        wp = prec + GUARD_BITS
        with context(wp):
            two_pi = 2 * gmpy2.const_pi()
            acc = gmpy2.mpc(0)
            L = self.context.L
            for i, c in enumerate(self.coeffs):
                if c:
                    ang = two_pi * i / L
                    root = gmpy2.mpc(gmpy2.cos(ang), gmpy2.sin(ang))
                    acc += (gmpy2.mpfr(c.numerator) / c.denominator) * root
        return BigComplex.from_mpc(acc, prec)

    def to_json(self) -> dict:
        return {"L": self.context.L,
                "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactValue":
        ctx = FieldContext(int(obj["L"]))
        coeffs = [Fraction(s) for s in obj["coeffs"]]
        return cls(ctx, coeffs)


def lift_to_common_context(values: Iterable[ExactValue]) -> list[ExactValue]:
    """Lift values over assorted Q(zeta_L) into Q(zeta_lcm)."""
    vals = list(values)
    if not vals:
        return []
    L = 1
    for v in vals:
        L = math.lcm(L, v.context.L)
    ctx = FieldContext(L)
    return [v.lift_to(ctx) for v in vals]


def root_of_unity(angle: Fraction) -> ExactValue:
    """exp(2*pi*i*angle) as an exact value over Q(zeta_q), angle = p/q."""
    angle = Fraction(angle) % 1
    return FieldContext(angle.denominator).zeta(angle.numerator)
