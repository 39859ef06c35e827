from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "roachkit._scan",
                ["src/roachkit/_scan.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # the package runs on the pure-Python scanner without the extension
    extensions = []

setup(ext_modules=extensions)
