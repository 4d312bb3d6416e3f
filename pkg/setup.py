import os

from setuptools import setup

ext_modules = []
if os.environ.get("SEMFLOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/semflow/rdf/_bgp.pyx"],
            language_level=3,
        )
    except ImportError:
        # pure-Python install; the match kernel falls back at import time
        pass

setup(ext_modules=ext_modules)
