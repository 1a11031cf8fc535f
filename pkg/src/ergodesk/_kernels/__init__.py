"""Hot-kernel selection: compiled extension if present, else pure fallback.

Set ERGODESK_NO_EXT=1 to force the fallback (used by tests and benchmarks to
compare both paths).  `IMPL` names the active implementation.
"""

import os

if os.environ.get("ERGODESK_NO_EXT") == "1":
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

IMPL = _impl.IMPL
heis_ball_table = _impl.heis_ball_table
heis_product_coords = _impl.heis_product_coords
heis_product_count = _impl.heis_product_count
heis_shift_coords = _impl.heis_shift_coords
zd_decode = _impl.zd_decode
zd_encode = _impl.zd_encode
zd_shift_coords = _impl.zd_shift_coords
ow_scan_z = _impl.ow_scan_z


def load(name):
    """Return a specific kernel module by name ('cython' or 'python')."""
    if name == "python":
        from . import _fallback

        return _fallback
    if name == "cython":
        from . import _core  # type: ignore[attr-defined]

        return _core
    raise ValueError(f"unknown kernel implementation {name!r}")
