"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``WUSANDHI_PURE_PYTHON=1`` to force the fallback.
"""

import os
from array import array

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("WUSANDHI_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

# absolute tolerance on log-scores below which two paths count as tied
TIE_EPS = 1e-9


def best_path(n, offsets, ends, logps, eps=TIE_EPS, impl=None):
    """Maximum-score path over a CSR-encoded DAG on nodes 0..n.

    Returns ``(next_node, score)`` where ``next_node[i]`` is the chosen edge
    end from node ``i``. Ties within ``eps`` go to the longer edge.
    """
    impl = impl or _impl
    if impl is _kernels_py:
        return impl.best_path(n, offsets, ends, logps, eps)
    return impl.best_path(
        n, array("q", offsets), array("q", ends), array("d", logps), eps
    )


def viterbi(length, emit, start, trans, eps=TIE_EPS, impl=None):
    """BMES Viterbi over flattened row-major tables (states B, M, E, S).

    Scores within ``eps`` tie; ties keep the earliest state as back-pointer
    and E over S at the end.
    """
    impl = impl or _impl
    if impl is _kernels_py:
        return impl.viterbi(length, emit, start, trans, eps)
    return impl.viterbi(length, array("d", emit), array("d", start), array("d", trans), eps)


def implementations():
    """All importable backends, keyed by name (used by tests and benchmarks)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
