from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "semihilbert._sweepkern",
        ["src/semihilbert/_sweepkern.pyx"],
        extra_compile_args=["-O3"],
    ),
]

setup(ext_modules=cythonize(extensions, language_level="3"))
