"""Build script.

The package is pure Python plus one optional compiled extension holding the
hot arithmetic kernel (Gaussian-rational scalars and dense elimination).
If Cython is unavailable, or ACDOL_PURE=1 is set, the extension is skipped
and the pure-Python twin is used at runtime.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("ACDOL_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "acdol._speedups",
                    ["src/acdol/_speedups.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
