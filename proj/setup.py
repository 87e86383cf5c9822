"""Build the _core extension by compiling the C++ sources directly.

The CMake build remains the primary path for development (it also builds the
CLI, tests, and acceptance binary); this setup script only exists so that
`pip install .` works without CMake orchestration.
"""

import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["src/bindings/module.cpp"]

ext = Pybind11Extension(
    "filament_stability._core",
    sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
