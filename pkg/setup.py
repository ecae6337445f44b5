import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "maiclass._core._speedups",
                ["src/maiclass/_core/_speedups.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # -ffp-contract=off keeps multiply-adds unfused so the
                # compiled kernels match the NumPy fallback bit for bit.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # Without Cython the package still installs; maiclass._core falls back
    # to the pure-Python kernels at import time.
    extensions = []

setup(ext_modules=extensions)
