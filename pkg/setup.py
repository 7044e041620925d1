"""Build script for the optional compiled kernel.

The extension needs Cython and the GMP headers.  If either is missing, or
compilation fails, the package installs without it and ``qblowup.kernel``
falls back to the pure-Python implementation.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - build environment dependent
            print(f"warning: compiled kernel not built ({exc}); using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - build environment dependent
            print(f"warning: could not build {ext.name} ({exc}); using the pure-Python kernel")


def extensions():
    if os.environ.get("QBLOWUP_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "qblowup._kernel",
        ["src/qblowup/_kernel.pyx"],
        libraries=["gmp"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
