# The compiled kernel is optional: if Cython is missing or the compiler
# fails, the package installs without it and falls back to pure Python.
from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    try:
        ext_modules = cythonize(
            [Extension("corfun._ckernels", ["src/corfun/_ckernels.pyx"], optional=True)],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except Exception as exc:  # cython itself choked; keep going without it
        print(f"corfun: skipping compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
