from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("MFW_BUILD_JOBS", default=4).install()

# The extension compiles the whole core directly; the CMake build stays the
# main path for the CLI and tests.
setup(
    ext_modules=[
        Pybind11Extension(
            "mfw._core",
            sorted(glob("src/*.cpp")) + ["bindings/module.cpp"],
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
