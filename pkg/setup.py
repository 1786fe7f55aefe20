"""Build hook: compile the search backend if the toolchain allows.

The package works without it (pure-Python backend); any failure here is
reported as a warning and the build proceeds.
"""
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled backend skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled backend {ext.name} skipped: {exc}")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError as exc:
        warnings.warn(f"compiled backend skipped: {exc}")
        return []
    try:
        return cythonize(
            [Extension("kripkit._engine_c", ["src/kripkit/_engine_c.pyx"])],
            language_level=3,
        )
    except Exception as exc:
        warnings.warn(f"compiled backend skipped: {exc}")
        return []


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
