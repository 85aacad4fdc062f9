import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SMDIFF_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "smdiff._scan_cy",
                    ["src/smdiff/_scan_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: the pure Python kernel is selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
