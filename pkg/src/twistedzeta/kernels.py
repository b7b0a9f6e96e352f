"""Hot-kernel selection: compiled extension when available, else pure Python.

Set TWISTEDZETA_PURE_PYTHON=1 to force the fallback (used by the benchmark
to compare both backends).
"""

from __future__ import annotations

import os

if os.environ.get("TWISTEDZETA_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
power_sum = _impl.power_sum
power_table = _impl.power_table
weighted_power_sum = _impl.weighted_power_sum
power_sum_moments = _impl.power_sum_moments
clenshaw = _impl.clenshaw
