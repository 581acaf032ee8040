"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it imports; otherwise the
pure-Python ``_pykernels``.  Set ``BGRLAB_KERNELS=python`` to force the
fallback (the test-suite runs both).
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("BGRLAB_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

P4, P5, K13 = _pykernels.P4, _pykernels.P5, _pykernels.K13
DONE, STOPPED, BUDGET = _pykernels.DONE, _pykernels.STOPPED, _pykernels.BUDGET

find_rainbow = _impl.find_rainbow
rainbow_at = _impl.rainbow_at
canonical_form = _impl.canonical_form
dfs = _impl.dfs


def backends():
    """Available kernel modules keyed by name (for benchmarks and tests)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:  # pragma: no cover
        pass
    return out
