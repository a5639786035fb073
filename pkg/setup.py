"""Build script: compiles the optional Cython kernel extension.

The extension is a pure speed-up; if Cython or a C compiler is missing the
install falls back to the NumPy reference kernels selected at import time.
"""

import sys

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "jkelab.kernels._fast",
                ["src/jkelab/kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("Cython not available; installing with pure-Python kernels only",
          file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
