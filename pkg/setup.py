# Builds the optional compiled kernels. A pure-numpy fallback is selected at
# import time when the extension is unavailable, so plain
#   pip install -e . --no-build-isolation
# works with or without Cython.
import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/kdvdress/_kernels.pyx",
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[numpy.get_include()],
)
