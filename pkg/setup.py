"""Build shim: compiles the optional trajectory-stepping extension.

If Cython or a C compiler is unavailable the package still installs;
kgpilot._kernels falls back to the pure-Python stepper at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "kgpilot._kernels._core",
                ["src/kgpilot/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"kgpilot: skipping compiled kernels ({exc}); pure-Python fallback will be used", file=sys.stderr)

setup(ext_modules=ext_modules)
