"""Install stirling-gautschi-bounds

Usage:

    pip install [-e] .
"""

import os
import sys

from setuptools import setup, find_packages
from setuptools.command.bdist_egg import bdist_egg

here = os.path.dirname(os.path.abspath(__file__))

version_ns = {}
with open(os.path.join(here, "stirling_gautschi", "_version.py")) as f:
    exec(f.read(), {}, version_ns)


class bdist_egg_disabled(bdist_egg):
    """Disabled version of bdist_egg

    Prevents setup.py install from performing setuptools' default easy_install,
    which it should never ever do.
    """

    def run(self):
        sys.exit(
            "Aborting implicit building of eggs. Use `pip install .` to install from source."
        )


cmdclass = {}
if "bdist_egg" not in sys.argv:
    cmdclass["bdist_egg"] = bdist_egg_disabled

with open(os.path.join(here, "README.md"), encoding="utf8") as f:
    readme = f.read()

with open(os.path.join(here, "requirements.txt")) as f:
    install_requires = f.read().splitlines()

setup(
    name="stirling-gautschi-bounds",
    version=version_ns["__version__"],
    install_requires=install_requires,
    python_requires=">=3.9",
    # this should be a whitespace separated string of keywords, not a list
    keywords="gamma factorial stirling gautschi interpolation bounds interval",
    description="Certified enclosures and two-sided bounds for the pi function, Stirling's formula and their log interpolation",
    long_description=readme,
    long_description_content_type="text/markdown",
    license="BSD",
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude=["tests", "performance"]),
    include_package_data=True,
    cmdclass=cmdclass,
    entry_points={"console_scripts": ["sgbounds = stirling_gautschi.cli:main"]},
)
