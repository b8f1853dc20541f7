"""Build script: compiles the optional trial-division kernel.

The extension is a pure speedup; if Cython or a C compiler is missing the
package installs anyway and unitring.kernel falls back to the Python
implementation at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/unitring/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
