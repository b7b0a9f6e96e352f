"""Multi-index coefficient machinery and validated parameter sets.

Expansions of products of (power-)linear forms into sparse multivariate
polynomials, the rebasing of the summation domain from "first index >= 1,
rest >= 0" to "all indices >= 1" (with the two candidate twist prefactors),
and the pairing of expansion coefficients with twisted-zeta special values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .errors import ValidationError
from .scalars import lerch_neg

#: Exponent multi-index; length equals the ambient dimension.
MultiIndex = tuple[int, ...]


def index_norm(k: MultiIndex) -> int:
    return sum(k)


class SparsePoly:
    """Sparse multivariate polynomial: map from MultiIndex to coefficient.

    Zero coefficients are never stored.  The coefficient ring is whatever the
    caller supplies (Fraction, ExactValue, gmpy2 complex); the class only
    needs ring +, *.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, object] | None = None):
        self.dim = dim
        self.terms: dict[MultiIndex, object] = {}
        if terms:
            for k, c in terms.items():
                if len(k) != dim:
                    raise ValueError("multi-index length != dimension")
                if not _is_zero(c):
                    self.terms[tuple(k)] = c

    @classmethod
    def one(cls, dim: int, ring_one=Fraction(1)) -> "SparsePoly":
        return cls(dim, {(0,) * dim: ring_one})

    def support(self) -> set[MultiIndex]:
        return set(self.terms)

    def items(self) -> Iterator[tuple[MultiIndex, object]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other):
        return (isinstance(other, SparsePoly) and self.dim == other.dim
                and self.terms == other.terms)

    def __repr__(self):
        return f"SparsePoly(dim={self.dim}, nterms={len(self.terms)})"

    def evaluate(self, point: Sequence):
        """Value at `point`, exactly in the coefficient ring."""
        if len(point) != self.dim:
            raise ValueError("point has wrong dimension")
        total = None
        for k, c in self.terms.items():
            mono = c
            for x, e in zip(point, k):
                for _ in range(e):
                    mono = mono * x
            total = mono if total is None else total + mono
        return 0 if total is None else total

    def _mul_form(self, entries: Sequence[tuple[int, int, object]], const) -> "SparsePoly":
        # Multiply by (sum over (i, step, coeff) of coeff*X_i^step) + const.
        out: dict[MultiIndex, object] = {}
        for k, c in self.terms.items():
            if not _is_zero(const):
                _accumulate(out, k, c * const)
            for i, step, g in entries:
                if _is_zero(g):
                    continue
                k2 = k[:i] + (k[i] + step,) + k[i + 1:]
                _accumulate(out, k2, c * g)
        return SparsePoly(self.dim, out)


def _is_zero(c) -> bool:
    try:
        return c == 0
    except TypeError:
        return False


def _accumulate(d: dict, k: MultiIndex, v) -> None:
    cur = d.get(k)
    new = v if cur is None else cur + v
    if _is_zero(new):
        d.pop(k, None)
    else:
        d[k] = new


def expand_power_product(gamma: Sequence, b: Sequence, h: Sequence[int],
                         alpha: Sequence[int]) -> SparsePoly:
    """Coefficients of prod_j (sum_{i<=j} gamma_i X_i^{h_i} + b_j)^{alpha_j}.

    One factor is multiplied in at a time (alpha_j repetitions); support sizes
    at the scale used here make this exact approach trivially fast.
    """
    n = len(alpha)
    if not (len(gamma) >= n and len(b) >= n and len(h) >= n):
        raise ValueError("vector lengths must cover the dimension")
    if any(hi < 1 for hi in h[:n]):
        raise ValueError("power-sum exponents must be positive")
    poly = SparsePoly.one(n)
    for j in range(n):
        entries = [(i, h[i], gamma[i]) for i in range(j + 1)]
        for _ in range(alpha[j]):
            poly = poly._mul_form(entries, b[j])
    return poly


def expand_linear_product(gamma: Sequence, b: Sequence,
                          alpha: Sequence[int]) -> SparsePoly:
    """Coefficients of prod_j (sum_{i<=j} gamma_i X_i + b_j)^{alpha_j};
    support is contained in {k : |k| <= |alpha|}."""
    return expand_power_product(gamma, b, (1,) * len(alpha), alpha)


def strip_gamma_powers(poly: SparsePoly, gamma: Sequence) -> SparsePoly:
    """Divide the coefficient of X^k by prod gamma_i^{k_i}.

    Sends the gamma-weighted expansion to the plain one (the two families of
    coefficients differ exactly by that monomial factor).
    """
    if any(_is_zero(g) for g in gamma[:poly.dim]):
        raise ValueError("gamma entries must be nonzero")
    out = {}
    for k, c in poly.terms.items():
        for i, e in enumerate(k):
            for _ in range(e):
                c = c / gamma[i]
        out[k] = c
    return SparsePoly(poly.dim, out)


def apply_gamma_powers(poly: SparsePoly, gamma: Sequence) -> SparsePoly:
    """Inverse of `strip_gamma_powers`."""
    out = {}
    for k, c in poly.terms.items():
        for i, e in enumerate(k):
            for _ in range(e):
                c = c * gamma[i]
        out[k] = c
    return SparsePoly(poly.dim, out)


def shift_to_all_positive(gamma: Sequence, b: Sequence, mu_inverses: Sequence):
    """Rebase a fully twisted block from domain (m_1>=1, rest>=0) to all >= 1.

    Returns (b_prime, prefactors) where b'_1 = b_1 and
    b'_j = b_j - (gamma_2 + ... + gamma_j) for 2 <= j <= r, and `prefactors`
    maps each variant name to the overall factor multiplying the all->=1
    series: 1 for "as_printed", prod_{j=2}^{r} mu_j^{-1} for "derived"
    (the factor produced by the change of variables m_j -> m_j + 1 acting on
    the twist monomial).  For r <= 1 the two variants coincide.
    """
    r = len(b)
    b_prime = [b[0]] if r else []
    acc = None
    for j in range(1, r):
        acc = gamma[j] if acc is None else acc + gamma[j]
        b_prime.append(b[j] - acc)
    derived = None
    for j in range(1, r):
        inv = mu_inverses[j]
        derived = inv if derived is None else derived * inv
    return tuple(b_prime), {"as_printed": 1, "derived": 1 if derived is None else derived}


def lerch_pairing(poly: SparsePoly, mus: Sequence,
                  lerch_fn: Callable = lerch_neg):
    """Pair expansion coefficients with twisted-zeta values at -k:

        sum over support  coeff(k) * prod_j lerch_fn(mu_j, k_j).

    With the expansion of prod_j(form_j)^{N_j} this is the closed form for
    the fully twisted family at -N on the all-indices->=1 domain.
    """
    if len(mus) != poly.dim:
        raise ValueError("need one twist per dimension")
    cache: dict[tuple[int, int], object] = {}

    def phi(j: int, k: int):
        got = cache.get((j, k))
        if got is None:
            got = lerch_fn(mus[j], k)
            cache[(j, k)] = got
        return got

    total = None
    for k, c in poly.items():
        term = c
        for j, kj in enumerate(k):
            term = term * phi(j, kj)
        total = term if total is None else total + term
    return 0 if total is None else total


# ---------------------------------------------------------------------------
# Parameter sets


def _off_cut(x) -> bool:
    """True when x avoids the branch cut (-inf, 0]."""
    if isinstance(x, (int, Fraction)):
        return x > 0
    re = getattr(x, "real", None)
    im = getattr(x, "imag", None)
    if re is None:
        return False
    return not (im == 0 and re <= 0)


def _re(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.real


@dataclass(frozen=True)
class ParameterSet:
    """All inputs of one zeta family, validated on construction.

    gamma and b are the linear-form data; mu holds the twist angles as
    Fractions p/q meaning exp(2*pi*i*p/q) (numeric mode also accepts float
    turns); h, when given, turns the linear forms into power sums; theta is
    the direction parameter used by the two-untwisted-indices family.

    The validity gate enforces Re(gamma_j) > 0 and Re(b_j) > -Re(gamma_1)
    always, and the principal-branch conditions on b_n - b_{n-1} whenever at
    least one index is untwisted (the fully twisted family does not split off
    its last variable, and its classical evaluation needs no such condition).
    """

    n: int
    k_twists: int
    gamma: tuple
    b: tuple
    mu: tuple = ()
    h: tuple | None = None
    theta: object | None = None
    mode: str = "exact"

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValidationError("n_positive", "need n >= 1")
        if not (0 <= self.k_twists <= n):
            raise ValidationError("k_range", "need 0 <= k <= n")
        if len(self.gamma) != n or len(self.b) != n:
            raise ValidationError("vector_length", "gamma and b must have length n")
        if len(self.mu) != self.k_twists:
            raise ValidationError("vector_length", "need one twist per twisted index")
        if self.mode not in ("exact", "numeric"):
            raise ValidationError("mode", "mode must be exact or numeric")
        if self.mode == "exact":
            for x in (*self.gamma, *self.b):
                if not isinstance(x, (int, Fraction)):
                    raise ValidationError("exact_inputs",
                                          "exact mode requires rational gamma, b")
            for a in self.mu:
                if not isinstance(a, (int, Fraction)):
                    raise ValidationError("exact_inputs",
                                          "exact mode requires root-of-unity twists p/q")
        for g in self.gamma:
            if not _re(g) > 0:
                raise ValidationError("re_gamma_positive", "need Re(gamma_j) > 0")
        for x in self.b:
            if not _re(x) > -_re(self.gamma[0]):
                raise ValidationError("re_b_lower_bound",
                                      "need Re(b_j) > -Re(gamma_1)")
        if self.k_twists < n and n >= 2:
            diff = self.b[n - 1] - self.b[n - 2]
            if not _off_cut(diff):
                raise ValidationError("b_diff_on_cut",
                                      "b_n - b_{n-1} must avoid (-inf, 0]")
            if not _off_cut(diff / self.gamma[n - 1]):
                raise ValidationError("b_diff_ratio_on_cut",
                                      "(b_n - b_{n-1})/gamma_n must avoid (-inf, 0]")
        for a in self.mu:
            if isinstance(a, (int, Fraction)):
                if Fraction(a) % 1 == 0:
                    raise ValidationError("mu_is_one", "twists must differ from 1")
            else:
                if float(a) % 1.0 == 0.0:
                    raise ValidationError("mu_is_one", "twists must differ from 1")
                if self.mode == "exact":
                    raise ValidationError("exact_inputs",
                                          "free-angle twists need numeric mode")
        if self.h is not None:
            if len(self.h) != n:
                raise ValidationError("vector_length", "h must have length n")
            for hi in self.h:
                if not (isinstance(hi, int) and hi >= 1):
                    raise ValidationError("h_positive", "need integer h_j >= 1")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, (int, Fraction)):
                f = Fraction(x)
                return f"{f.numerator}/{f.denominator}"
            if isinstance(x, complex) or hasattr(x, "imag"):
                return {"re": float(x.real), "im": float(x.imag)}
            return float(x)

        out = {
            "n": self.n,
            "k": self.k_twists,
            "gamma": [enc(g) for g in self.gamma],
            "b": [enc(x) for x in self.b],
            "mu": [enc(a) for a in self.mu],
            "mode": self.mode,
        }
        if self.h is not None:
            out["h"] = list(self.h)
        if self.theta is not None:
            out["theta"] = enc(self.theta)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "ParameterSet":
        mode = obj.get("mode", "exact")

        def dec(x, allow_angle=False):
            if isinstance(x, str):
                return Fraction(x)
            if isinstance(x, Mapping):
                if mode != "numeric":
                    raise ValidationError("exact_inputs",
                                          "complex entries need numeric mode")
                return complex(float(x["re"]), float(x.get("im", 0.0)))
            if isinstance(x, bool):
                raise ValidationError("schema", "boolean is not a number")
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, float):
                if mode != "numeric" or not allow_angle:
                    raise ValidationError("exact_inputs",
                                          "float entries need numeric mode")
                return x
            raise ValidationError("schema", f"cannot parse value {x!r}")

        h = obj.get("h")
        theta = obj.get("theta")
        return cls(
            n=int(obj["n"]),
            k_twists=int(obj["k"]),
            gamma=tuple(dec(x) for x in obj["gamma"]),
            b=tuple(dec(x) for x in obj["b"]),
            mu=tuple(dec(x, allow_angle=True) for x in obj["mu"]),
            h=tuple(int(v) for v in h) if h is not None else None,
            theta=dec(theta) if theta is not None else None,
            mode=mode,
        )

    # -- derived views ------------------------------------------------------

    def twist_orders_lcm(self) -> int:
        L = 1
        for a in self.mu:
            if isinstance(a, (int, Fraction)):
                L = math.lcm(L, Fraction(a).denominator)
        return L

    def last_shift_ratio(self):
        """(b_n - b_{n-1}) / gamma_n, the Hurwitz-type parameter of the split."""
        if self.n < 2:
            raise ValueError("needs n >= 2")
        return (self.b[-1] - self.b[-2]) / self.gamma[-1]
