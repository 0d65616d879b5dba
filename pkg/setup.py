"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python backend is selected at
import time); set LAYCUT_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LAYCUT_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "laycut._kernels._core",
                    ["src/laycut/_kernels/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )

setup(ext_modules=ext_modules)
