import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    for candidate in (
        os.environ.get("EIGEN_INCLUDE_DIR", ""),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
    ):
        if candidate and os.path.isdir(candidate):
            return candidate
    raise RuntimeError(
        "Eigen headers not found; set EIGEN_INCLUDE_DIR to the directory "
        "containing Eigen/"
    )


ParallelCompile("NPY_NUM_BUILD_JOBS").install()

ext = Pybind11Extension(
    "vrfw._vrfw",
    sources=[
        "bindings/vrfw_module.cpp",
        "src/oracles.cpp",
        "src/estimator.cpp",
        "src/problems.cpp",
        "src/dataio.cpp",
        "src/solvers.cpp",
        "src/bench.cpp",
    ],
    include_dirs=["include", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
