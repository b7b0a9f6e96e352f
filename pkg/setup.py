import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator extension if possible, otherwise fall back.

    The package selects a pure-Python implementation of the hot kernels at
    import time when the compiled module is absent, so a failed extension
    build must not abort the install.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"compiled kernels unavailable ({exc}); "
                          "falling back to pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"could not build {ext.name} ({exc}); "
                          "falling back to pure-Python kernels")


def extensions():
    import glob
    import os

    if not os.path.exists("src/twistedzeta/_kernels.pyx"):
        return []
    try:
        import gmpy2
        from Cython.Build import cythonize
    except ImportError:
        return []
    gmpy2_dir = os.path.dirname(gmpy2.__file__)
    # Link against the shared libraries bundled with the gmpy2 wheel so the
    # kernel operates on the same mpfr/mpc runtime as gmpy2 itself.
    bundled = sorted(glob.glob(os.path.join(gmpy2_dir, "..", "gmpy2.libs", "lib*.so*")))
    link_args = bundled + ([f"-Wl,-rpath,{os.path.dirname(bundled[0])}"] if bundled else [])
    return cythonize(
        [
            Extension(
                "twistedzeta._kernels",
                ["src/twistedzeta/_kernels.pyx"],
                include_dirs=[gmpy2_dir],
                extra_link_args=link_args,
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
