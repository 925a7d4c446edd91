from setuptools import setup, Extension

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ppshg._kernel",
                ["src/ppshg/_kernel.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-fcx-limited-range", "-march=native"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
