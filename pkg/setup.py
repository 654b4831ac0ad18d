import os

import numpy
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HARMAP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "harmap._kernels_cy",
                    ["src/harmap/_kernels_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    # plain complex products; skips the NaN-recovery path of __muldc3
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
