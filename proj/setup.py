"""CMake-driven build_ext: compiles the C++ core and the _vicinity module."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent

        import pybind11

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DVICINITY_BUILD_TESTS=OFF",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_vicinity", "-j"],
            check=True,
        )
        built = next(build_dir.glob("_vicinity*.so"))
        out_dir.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, self.get_ext_fullpath(ext.name))


setup(
    ext_modules=[CMakeExtension("vicinity._vicinity")],
    cmdclass={"build_ext": CMakeBuild},
)
