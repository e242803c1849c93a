"""Build script for the optional compiled objective kernels.

The package works without the extension (a NumPy fallback is selected at
import time); building it just makes grid evaluation faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "cyberalloc._kernels._compiled",
                ["src/cyberalloc/_kernels/_compiled.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
