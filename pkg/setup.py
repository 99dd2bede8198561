"""Build script: compiles the optional C verification kernels.

The package is fully functional without the extension; the pure NumPy
fallback in braceblocks._kernels.fallback implements the same contract.
Set BRACEBLOCK_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BRACEBLOCK_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "braceblocks._kernels._ckernels",
            sources=["src/braceblocks/_kernels/_ckernels.pyx"],
            extra_compile_args=["-O3"],
            optional=True,
        )
        ext_modules = cythonize(
            [ext], compiler_directives={"language_level": "3"}
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
