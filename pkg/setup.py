from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-numpy
# implementation in switchsim._kernels_py when the extension is absent.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("switchsim._kernels", ["src/switchsim/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
