"""Optional compiled kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TIOTEST_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("tiotest.clockspace._kernel", ["src/tiotest/clockspace/_kernel.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
            quiet=True,
        )

setup(ext_modules=ext_modules)
