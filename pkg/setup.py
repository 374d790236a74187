import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ZONOTOPAL_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/zonotopal/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback kernels are selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
