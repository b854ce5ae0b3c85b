"""Select the DBM kernel implementation at import time.

The compiled extension is used when it was built; set ``TIOTEST_PURE=1`` to
force the pure-Python kernels (the benchmark and the kernel-parity tests do
this explicitly through :func:`load`).
"""

import importlib
import os

__all__ = ["impl", "BACKEND", "load"]


def load(name):
    """Return the kernel module ``'compiled'`` or ``'python'``."""
    if name == "compiled":
        return importlib.import_module("tiotest.clockspace._kernel")
    if name == "python":
        return importlib.import_module("tiotest.clockspace._kernel_py")
    raise ValueError(f"unknown kernel backend {name!r}")


if os.environ.get("TIOTEST_PURE"):
    impl = load("python")
    BACKEND = "python"
else:
    try:
        impl = load("compiled")
        BACKEND = "compiled"
    except ImportError:
        impl = load("python")
        BACKEND = "python"
