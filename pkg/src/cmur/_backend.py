"""Numba/numpy backend selection for the hot numeric kernels.

The package runs on plain numpy everywhere; a handful of inner loops
(measurement-strategy search, sphere averaging, Carlson iterations) are
additionally compiled with numba when it is installed.  Set the environment
variable ``CMUR_NUMBA=0`` before import to force the pure-numpy path; any
other value (or leaving it unset) enables numba if available.
"""

from __future__ import annotations

import os

_FALSey = {"0", "off", "false", "no"}


def _numba_requested() -> bool:
    return os.environ.get("CMUR_NUMBA", "1").strip().lower() not in _FALSey


HAVE_NUMBA = False
if _numba_requested():
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA


def maybe_njit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged.

    Kernels are written in nopython-compatible style so that the compiled
    and interpreted paths execute the same arithmetic in the same order.
    """
    if USING_NUMBA:
        from numba import njit

        return njit(cache=True)(func)
    return func
