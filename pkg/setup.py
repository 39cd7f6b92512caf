"""Build the optional Cython kernel.

The package works without the compiled extension (a pure-Python fallback is
selected at import time), so a failed extension build only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("chevcount._kernel._jreduced", ["src/chevcount/_kernel/_jreduced.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
