"""Build script: compiles the optional scoring kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so extension build failures are downgraded to warnings unless
VERSESMITH_REQUIRE_EXT=1 is set.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


REQUIRE_EXT = os.environ.get("VERSESMITH_REQUIRE_EXT") == "1"
SKIP_EXT = os.environ.get("VERSESMITH_SKIP_EXT") == "1"


def extensions():
    if SKIP_EXT:
        return []
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError as exc:
        if REQUIRE_EXT:
            raise
        print(f"versesmith: Cython/NumPy unavailable ({exc}); "
              "building without the compiled kernel", file=sys.stderr)
        return []
    ext = Extension(
        "versesmith.lm._kernels",
        ["src/versesmith/lm/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """Treat extension build failures as non-fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            if REQUIRE_EXT:
                raise
            print(f"versesmith: kernel build failed ({exc}); "
                  "falling back to the NumPy implementation", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            if REQUIRE_EXT:
                raise
            print(f"versesmith: kernel build failed ({exc}); "
                  "falling back to the NumPy implementation", file=sys.stderr)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
