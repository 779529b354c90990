"""Kernel selection: compiled extension if available, pure Python otherwise.

``THETASCHUR_PURE=1`` forces the pure fallback (used by the parity tests and
the benchmark).
"""

import os

if os.environ.get("THETASCHUR_PURE") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
rref = _impl.rref
rank = _impl.rank
rank2 = _impl.rank2
poly_mul = _impl.poly_mul


def load(name):
    """Return a specific kernel module by name ('pure' or 'compiled')."""
    if name == "pure":
        from . import _pure
        return _pure
    if name == "compiled":
        from . import _speedups  # raises ImportError if not built
        return _speedups
    raise ValueError(f"unknown kernel {name!r}")
