"""Build script: compiles the optional C kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here degrades gracefully.  Set
ERGODESK_NO_EXT=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("ERGODESK_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "ergodesk._kernels._core",
        ["src/ergodesk/_kernels/_core.pyx"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
