from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("semitop._kernels", ["src/semitop/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    # no Cython: the pure-Python kernels are used
    pass

setup(ext_modules=ext_modules)
