"""Backend selection for the hot finite-difference kernels.

The time march in ``_kernels`` is the one loop in this package where Python
overhead matters: a sequential tridiagonal sweep per field per time step.
When numba is importable (and not disabled) the loop kernels are JIT
compiled; otherwise a vectorized numpy/scipy path is used instead.

Set ``FREECONV_DISABLE_NUMBA=1`` to force the numpy path. ``NUMBA_DISABLE_JIT``
is honored too, since running the loop kernels in object mode would be far
slower than the numpy fallback.
"""

import os


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip() not in ("", "0")


def _numba_enabled() -> bool:
    if _flag("FREECONV_DISABLE_NUMBA") or _flag("NUMBA_DISABLE_JIT"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


# Evaluated once at import; tests that need both paths call the kernels
# directly instead of toggling this.
HAVE_NUMBA = _numba_enabled()


def backend() -> str:
    """Name of the active march backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"
