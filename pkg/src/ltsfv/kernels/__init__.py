"""Hot per-step kernels with twin numba / pure-numpy implementations.

The active backend is chosen once at import time: numba when importable
(the default), pure numpy when the ``LTSFV_NO_NUMBA`` environment variable is
truthy or numba is missing.  Both backends implement the same functions with
identical floating-point behaviour; ``benchmarks/bench_backends.py`` compares
their throughput.
"""

import os

from . import _numpy as numpy_backend
from ._codes import (CFL_SLACK, FLUX_ADVECTION, FLUX_BURGERS, SCHEME_LXF,
                     SCHEME_ROE, SCHEME_ROELXF, SCHEME_ROESTAR)

_TRUTHY = {"1", "true", "yes", "on"}

ENV_FLAG = "LTSFV_NO_NUMBA"


def resolve_backend(env_value: str, numba_available: bool) -> str:
    """Backend name selected for a given flag value and numba availability."""
    if str(env_value).strip().lower() in _TRUTHY:
        return "numpy"
    return "numba" if numba_available else "numpy"


numba_backend = None
if resolve_backend(os.environ.get(ENV_FLAG, ""), True) == "numba":
    try:
        from . import _numba as numba_backend
    except ImportError:
        numba_backend = None

_active = numba_backend if numba_backend is not None else numpy_backend

scalar_courant_step = _active.scalar_courant_step
burgers_godunov_step = _active.burgers_godunov_step
euler_courant_step = _active.euler_courant_step


def backend_name() -> str:
    return "numba" if _active is numba_backend else "numpy"
