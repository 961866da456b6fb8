"""Build script for the optional compiled row-reduction kernel.

The package is fully functional without the extension; arrangeatlas._kernel
falls back to the pure-Python implementation when the compiled module is
missing or fails to build.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "arrangeatlas._echelon_c",
                ["src/arrangeatlas/_echelon_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
