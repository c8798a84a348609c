from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; pufgate falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pufgate._kernels",
                ["src/pufgate/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
