"""Build hook for the optional compiled kernel.

The pure-Python fallback is always installed; a missing compiler or Cython
only costs speed.
"""
import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("FERMAT_TORSION_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "fermat_torsion.exactfield._ckernels",
        ["src/fermat_torsion/exactfield/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=extensions())
