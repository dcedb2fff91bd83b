"""Pick the compiled kernels when they were built, else the Python ones.

Set CORFUN_PURE=1 to force the Python fallback.
"""
import os

BACKEND = "python"
if os.environ.get("CORFUN_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import compose_rows, compose_terms, join_action, vdash_rows  # noqa: F401
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import compose_rows, compose_terms, join_action, vdash_rows  # noqa: F401
