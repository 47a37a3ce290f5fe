"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so the build degrades gracefully when Cython or a C compiler
is unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("rp2cover._kernels_c", ["src/rp2cover/_kernels_c.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
