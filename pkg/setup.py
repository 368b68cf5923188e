"""Build the compiled interaction kernel.

The package works without the extension (a pure-Python engine is selected at
import time), but full-scale experiments are only practical with it.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    # -ffp-contract=off keeps the kernel bit-identical to the pure-Python
    # engine (no FMA contraction of a*b+c).
    ext_modules = cythonize(
        [
            Extension(
                "prejsim._kernel",
                ["src/prejsim/_kernel.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
