import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the numpy
# implementation in mfnear._kernels_py when the extension is absent.
# Set MFNEAR_NO_EXT=1 to skip compilation entirely.
ext_modules = []
if os.environ.get("MFNEAR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("mfnear._kernels", ["src/mfnear/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
