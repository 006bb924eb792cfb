from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure
# Python elimination in cdindex._kernel_py when the extension is absent.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cdindex._kernel", ["src/cdindex/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
