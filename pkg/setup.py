import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off: the compiled kernel must be bit-identical to the
# numpy fallback, so fused multiply-add contraction is disabled.
extensions = [
    Extension(
        "diskgroups.engine._kernel",
        ["src/diskgroups/engine/_kernel.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
