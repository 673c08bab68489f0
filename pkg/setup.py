"""Build hook for the optional compiled kernels.

The package is fully functional without the extension: kernels fall back to
numpy implementations chosen at import time.  Set HEXPATTERNS_NO_NATIVE=1 to
skip compilation entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HEXPATTERNS_NO_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hexpatterns.kernels._native",
                    ["src/hexpatterns/kernels/_native.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
