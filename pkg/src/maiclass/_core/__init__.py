"""Backend selection for the hot numeric kernels.

The compiled extension (``_speedups``, Cython) and the pure-Python module
(``_pyfallback``) implement the same two kernels with identical arithmetic,
so results are bit-for-bit equal regardless of which one is loaded. The
compiled module is preferred; set ``MAICLASS_PURE_PYTHON=1`` to force the
fallback (used by the benchmark and by CI without a compiler).
"""

import os

if os.environ.get("MAICLASS_PURE_PYTHON"):
    from . import _pyfallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _pyfallback as _impl

        BACKEND = "python"

smo_optimize = _impl.smo_optimize
best_split = _impl.best_split
