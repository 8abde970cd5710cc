"""Backend selection for the trajectory-stepping kernel.

The compiled Cython stepper is preferred when importable; the pure-Python
reference is the fallback. Override with KGPILOT_BACKEND=python|compiled
(compiled raises if the extension is missing). Both backends implement the
same algorithm with identical operation order.
"""

from __future__ import annotations

import os

from . import _pyref
from ._pyref import LAW_DEBROGLIE, LAW_MODIFIED, STOP_BOUNDARY, STOP_COMPLETE, STOP_NODE

__all__ = [
    "integrate_flow",
    "backend_name",
    "get_integrator",
    "LAW_DEBROGLIE",
    "LAW_MODIFIED",
    "STOP_COMPLETE",
    "STOP_NODE",
    "STOP_BOUNDARY",
]

_requested = os.environ.get("KGPILOT_BACKEND", "auto")
if _requested not in {"auto", "python", "compiled"}:
    raise ValueError(f"KGPILOT_BACKEND={_requested!r}; expected auto, python or compiled")

_compiled = None
if _requested in {"auto", "compiled"}:
    try:
        from . import _core as _compiled  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise ImportError("KGPILOT_BACKEND=compiled but the extension is not built")

if _compiled is not None:
    integrate_flow = _compiled.integrate_flow
    backend_name = "compiled"
else:
    integrate_flow = _pyref.integrate_flow
    backend_name = "python"


def get_integrator(name: str):
    """Fetch a specific backend's stepper (for equivalence tests and benchmarks)."""
    if name == "python":
        return _pyref.integrate_flow
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled backend is not available")
        return _compiled.integrate_flow
    raise ValueError(f"unknown backend {name!r}")
