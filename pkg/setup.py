"""Build script for the compiled kernel extension.

The extension is optional: when no C toolchain is available the package
installs anyway and riskmonitor._kernels falls back to the pure-Python
implementation at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing; fallback kernels take over
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


try:
    from setuptools import Extension
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension(
            "riskmonitor._kernels._ckernels",
            ["src/riskmonitor/_kernels/_ckernels.pyx"],
            extra_compile_args=["-O3", "-ffast-math", "-march=native"],
            libraries=["mvec", "m"],
        )],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
