"""Build script for the compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), but the Cython core is built by default.  Set
WAVESHRINK_SKIP_EXT=1 to install the pure-Python variant.
"""

import os

from setuptools import Extension, setup

if os.environ.get("WAVESHRINK_SKIP_EXT"):
    ext_modules = []
else:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "waveshrink.kernels.cy_backend",
                ["src/waveshrink/kernels/cy_backend.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
