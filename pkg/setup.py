"""Build script. The compiled hash core is optional: when Cython or a C
compiler is unavailable the package falls back to the pure-Python kernels
selected at import time (see celebbasis/hashing.py)."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CELEBBASIS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("celebbasis._hashcore", ["src/celebbasis/_hashcore.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
