"""Build script for the optional compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the optimizer hot loop much faster.
"""

import numpy
from setuptools import setup
from Cython.Build import cythonize

extensions = cythonize(
    ["src/hyperbell/_kernels/_core.pyx"],
    compiler_directives={
        "language_level": "3",
        "boundscheck": False,
        "wraparound": False,
        "cdivision": True,
    },
)
for ext in extensions:
    ext.include_dirs.append(numpy.get_include())

setup(ext_modules=extensions)
