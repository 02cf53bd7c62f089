"""Build hook for the optional compiled integer kernel.

The package is pure Python plus one Cython extension; when Cython (or a C
compiler) is unavailable the build still succeeds and the interpreter falls
back to the pure kernel at import time.
"""

from setuptools import Extension, setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("rjanus._intops_c", ["src/rjanus/_intops_c.pyx"])],
        language_level=3,
    )


setup(ext_modules=_extensions())
