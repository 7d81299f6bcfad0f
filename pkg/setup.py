import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QUADCLASS_NO_EXT") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "quadclass._kernels",
                ["src/quadclass/_kernels.pyx"],
                # -ffp-contract=off keeps the float kernels bit-identical
                # to the pure-python fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
