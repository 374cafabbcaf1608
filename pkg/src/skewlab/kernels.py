"""Integer kernels: compiled when the extension is built, pure Python otherwise.

Set SKEWLAB_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("SKEWLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # noqa: F811
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py

rref_mod_p = _impl.rref_mod_p
nullspace_mod_p = _impl.nullspace_mod_p
lattice_histogram = _impl.lattice_histogram
