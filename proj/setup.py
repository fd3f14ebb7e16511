import glob
import os
import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    try:
        out = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True,
            text=True,
            check=True,
        ).stdout
        for tok in out.split():
            if tok.startswith("-I"):
                return tok[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    for cand in ("/usr/include/eigen3", "/usr/local/include/eigen3"):
        if os.path.isdir(cand):
            return cand
    raise RuntimeError("Eigen3 headers not found (install libeigen3-dev)")


ext = Pybind11Extension(
    "srgeom._core",
    sorted(glob.glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
