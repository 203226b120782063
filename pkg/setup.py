"""Build script: compiles the optional C evaluation kernel.

The package works without the extension (a pure-Python kernel is selected
at import time); building it just makes `eval` and `bench-ack` much faster.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ccsinv/engine/_ckernel.pyx"],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
