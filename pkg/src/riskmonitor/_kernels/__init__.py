"""Numeric kernels: gradient-descent fit and batch logit scoring.

Two interchangeable implementations live here: a Cython extension
(_ckernels) fused over rows, and a pure-Python/numpy fallback
(_pykernels). The compiled one is picked when importable; set
RISKMONITOR_PURE_PYTHON=1 to force the fallback. Both are exact to
float round-off of each other; `bench/bench_kernels.py` compares them.
"""

import os

if os.environ.get("RISKMONITOR_PURE_PYTHON") == "1":
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

fit_logreg = _impl.fit_logreg
batch_logits = _impl.batch_logits

__all__ = ["fit_logreg", "batch_logits", "BACKEND"]
