import numpy as np
from setuptools import setup

# The compiled recurrence kernel is optional: if Cython (or a C compiler)
# is unavailable the package installs pure-Python and selects the numpy
# backend at import time.
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "hodgeconv._kernels.laguerre_cy",
                ["src/hodgeconv/_kernels/laguerre_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
