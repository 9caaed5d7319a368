import os

from setuptools import setup

ext_modules = []
if os.environ.get("POSBP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/posbp/_ttcore.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback kernel is selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
