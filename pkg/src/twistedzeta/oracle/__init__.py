"""Independent arbitrary-precision oracle for the twisted zeta families.

Everything here evaluates the *series definitions* (directly inside the
convergence domain, by Mellin-Barnes contour integration outside it) without
consulting the closed-form layer, so discrepancies between the two are
meaningful evidence.
"""

from .gammafn import gamma, gamma_ratio, rgamma
from .hurwitz import EMHurwitz, hurwitz_numeric, riemann_numeric
from .lerch import (
    HurwitzLerchFixed,
    TwistSession,
    hurwitz_lerch_numeric,
    lerch_numeric,
)
from .series import mzeta_series
from .mb import directional_limit, mb_eval, power_hurwitz_numeric
from .report import OracleReport, adjudicate_variant, crosscheck

__all__ = [
    "gamma", "gamma_ratio", "rgamma",
    "EMHurwitz", "hurwitz_numeric", "riemann_numeric",
    "TwistSession", "HurwitzLerchFixed", "lerch_numeric",
    "hurwitz_lerch_numeric",
    "mzeta_series", "mb_eval", "directional_limit", "power_hurwitz_numeric",
    "OracleReport", "crosscheck", "adjudicate_variant",
]
