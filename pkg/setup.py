import os

from setuptools import setup

ext_modules = []
if os.environ.get("AUTZ_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/autz/_snf.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except Exception as exc:  # no Cython: the pure-Python kernel is used
        print(f"autz: building without compiled kernel ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
