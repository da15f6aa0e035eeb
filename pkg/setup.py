"""Build script for the optional compiled kernels.

The package works without a compiler: when Cython or numpy headers are
unavailable the extension is skipped and ``distver.kernels`` falls back to
the numpy implementation.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("distver._ckernels", ["src/distver/_ckernels.pyx"], include_dirs=[np.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
