"""Builds the optional Cython product kernel; the package works without it."""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(["src/qheis/_kernel.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
