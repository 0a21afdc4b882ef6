#!/usr/bin/env python
# encoding: utf-8
"""Packaging script for the hyperjet library."""
import sys
import os
import re
from setuptools import setup, find_packages

if sys.version_info < (3, 10):
    sys.exit("ERROR: hyperjet requires Python 3.10+")

here = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(here, "README.md")) as f:
    readme = f.read()


def versionfromfile(*filepath):
    infile = os.path.join(here, *filepath)
    with open(infile) as fp:
        version_match = re.search(
            r"^__version__\s*=\s*['\"]([^'\"]*)['\"]", fp.read(), re.M
        )
        if version_match:
            return version_match.group(1)
        raise RuntimeError("Unable to find version string in {}.".format(infile))


version = versionfromfile("hyperjet/version.py")


setup(
    name="hyperjet",
    version=version,
    description="Jet extension of N-differentials from the disk to the bidisk, with numerical identity checks",
    long_description=readme,
    long_description_content_type="text/markdown",
    setup_requires=[
    ],
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "mpmath>=1.3",
        "pandas>=2.0",
        "hjson",
        "pyyaml",
    ],
    python_requires=">=3.10",
    tests_require=["pytest", "pytest-cov"],
    platforms="any",
    packages=find_packages(exclude=["tests", "examples*"]),
    package_data={"hyperjet": ["resources/*.hjson"]},
    entry_points={"console_scripts": [
       "hyperjet_info=hyperjet.hyperjet_info:main",
       "hyperjet_eval=hyperjet.hyperjet_eval:main",
       "hyperjet_coeffs=hyperjet.hyperjet_coeffs:main",
       "hyperjet_norm=hyperjet.hyperjet_norm:main",
       "hyperjet_poincare=hyperjet.hyperjet_poincare:main",
       "hyperjet_kernel=hyperjet.hyperjet_kernel:main",
       "hyperjet_verify=hyperjet.hyperjet_verify:main",
    ]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3 :: Only",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries",
    ],
    project_urls={
    },
)
