"""Backend selection for the pixel kernels.

The compiled module is preferred when importable; otherwise the pure-Python
twin takes over transparently. ``SUBWORDSEG_BACKEND=python`` forces the
fallback (useful for benchmarking and debugging), ``SUBWORDSEG_BACKEND=c``
demands the compiled module and fails loudly when it is missing.
"""

import os

from . import _kernels_py

_requested = os.environ.get("SUBWORDSEG_BACKEND", "").strip().lower()
if _requested not in ("", "c", "python"):
    raise ImportError(
        f"SUBWORDSEG_BACKEND={_requested!r} is not recognised "
        "(expected 'c' or 'python')"
    )

if _requested == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "SUBWORDSEG_BACKEND=c but the compiled kernel module is not "
                "available; reinstall the package or drop the override"
            ) from None
        _impl = _kernels_py

BACKEND = "c" if _impl.__name__.endswith("_kernels_c") else "python"

dilate8 = _impl.dilate8
bridge = _impl.bridge
majority = _impl.majority
thin_pass = _impl.thin_pass
label8 = _impl.label8
region_stats = _impl.region_stats
masked_area = _impl.masked_area
