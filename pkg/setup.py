"""Build the optional compiled kernels.

The package is fully functional without them (qblocks._backend falls
back to the pure-Python twins); when Cython and a C compiler are
available the divisor-sum kernels compile to qblocks._kernels.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qblocks/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
