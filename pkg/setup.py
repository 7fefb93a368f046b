from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension("fluxring._kernels", ["src/fluxring/_kernels.pyx"]),
]

setup(
    ext_modules=cythonize(extensions, language_level="3") if cythonize else [],
)
