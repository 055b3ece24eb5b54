from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "uncprop._core",
    sources=[
        "src/error.cpp",
        "src/numfmt.cpp",
        "src/measurement.cpp",
        "src/expression.cpp",
        "src/propagation.cpp",
        "src/montecarlo.cpp",
        "src/txrf.cpp",
        "src/coinflip.cpp",
        "bindings/module.cpp",
    ],
    include_dirs=["include"],
    define_macros=[("UNCPROP_VERSION", '"0.1.0"')],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
