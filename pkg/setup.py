import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TREECOVER_NO_EXT") != "1" and os.path.exists(
    "src/treecover/_kernel.pyx"
):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("treecover._kernel", ["src/treecover/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-Python only, the package
        # falls back to the interpreted kernel at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
