import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython or a C compiler the
# package installs and runs on the pure-Python fallback.
ext_modules = []
if os.environ.get("BGRLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "bgrlab._ckernels",
                    ["src/bgrlab/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
