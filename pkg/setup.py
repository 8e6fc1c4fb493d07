"""Build the optional Cython kernels; the package works without them."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    try:
        ext_modules = cythonize(
            ["src/freecurves/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except Exception as exc:  # no compiler: fall back to pure Python
        print(f"warning: not building compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
