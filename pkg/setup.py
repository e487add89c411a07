import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qrandcert._kernel",
                ["src/qrandcert/_kernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    # Without Cython the package still installs; the pure-Python kernel
    # twin is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
