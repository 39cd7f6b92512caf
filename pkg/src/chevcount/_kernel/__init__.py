"""Backend selection for the hot enumeration kernel.

The compiled Cython walker is used when its extension module built; the
pure-Python fallback has the same contract.  Set CHEVCOUNT_PURE=1 to force
the fallback (used by the backend-equivalence tests and the benchmark).
"""

import os

from ._common import Chunk, QuotientRun  # noqa: F401

if os.environ.get("CHEVCOUNT_PURE"):
    from . import pyenum as _impl
else:
    try:
        from . import _jreduced as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pyenum as _impl

BACKEND = _impl.BACKEND
enumerate_quotient = _impl.enumerate_quotient


def get_backend(name: str | None = None):
    """Return the named backend module ("compiled" or "pure"); None picks
    the active one."""
    if name is None or name == BACKEND:
        return _impl
    if name == "pure":
        from . import pyenum
        return pyenum
    if name == "compiled":
        from . import _jreduced  # raises ImportError when not built
        return _jreduced
    raise ValueError("unknown backend %r" % name)
