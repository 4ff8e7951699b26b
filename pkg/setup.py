import os

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

openmp = [] if os.environ.get("WENOH_NO_OPENMP") else ["-fopenmp"]

ext = Extension(
    "wenoh._ckernels",
    ["src/wenoh/_ckernels.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3", *openmp],
    extra_link_args=openmp,
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)

setup(ext_modules=cythonize([ext], language_level=3))
