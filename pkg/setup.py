"""Build script: compiles the fused dual-arithmetic kernels if Cython and a C
compiler are available; otherwise installs the pure-numpy fallback only."""
import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "popinn.kernels._core",
                ["src/popinn/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"popinn: building without compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
