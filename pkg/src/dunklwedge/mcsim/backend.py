"""Backend selection: numba kernels unless ``DUNKLWEDGE_NO_NUMBA`` is set.

``DUNKLWEDGE_NUM_THREADS`` caps the numba thread pool.  Results do not depend
on the thread count since every path owns its random stream.
"""

from __future__ import annotations

import os

NO_NUMBA_ENV = "DUNKLWEDGE_NO_NUMBA"
THREADS_ENV = "DUNKLWEDGE_NUM_THREADS"


def _truthy(value: str | None) -> bool:
    return value is not None and value.strip().lower() not in ("", "0", "false", "no")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def use_numba() -> bool:
    """True when the compiled kernels should run (read on every call)."""
    return not _truthy(os.environ.get(NO_NUMBA_ENV)) and numba_available()


def backend_name(force: str | None = None) -> str:
    if force is not None:
        if force not in ("numba", "numpy"):
            raise ValueError(f"unknown backend {force!r}")
        if force == "numba" and not numba_available():
            raise RuntimeError("numba is not installed")
        return force
    return "numba" if use_numba() else "numpy"


def configure_threads() -> None:
    n = os.environ.get(THREADS_ENV)
    if n and numba_available():
        import numba

        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
