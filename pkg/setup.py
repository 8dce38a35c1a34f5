"""Build the optional compiled kernel; fall back to pure Python on failure."""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [Extension(
            "sortedprox._pav_cy",
            ["src/sortedprox/_pav_cy.pyx"],
            extra_compile_args=["-O3", "-ffp-contract=off"],
        )],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
