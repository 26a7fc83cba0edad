from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "maxrank._maxrank",
    sources=[
        "bindings/module.cpp",
        "src/ffla.cpp",
        "src/geom.cpp",
        "src/numset.cpp",
        "src/oracle.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
