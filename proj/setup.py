"""CMake-backed build for the spherechord extension module.

scikit-build-core would make this file unnecessary, but it is not always
available; this is the plain setuptools bridge that configures the CMake
project with -DSKBUILD=ON and copies the built extension into the wheel.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake-build"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            "-DSKBUILD=ON",
            "-DSPHERECHORD_PYTHON=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_spherechord", "--parallel"],
            check=True,
        )

        built = list((build_dir / "python" / "spherechord").glob("_spherechord*.so"))
        if not built:
            raise RuntimeError("CMake did not produce the _spherechord extension")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], target)


setup(
    packages=["spherechord"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("spherechord._spherechord")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
