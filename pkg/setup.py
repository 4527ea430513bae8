#!/usr/bin/env python3
"""Setup script for Turanflag - Turan density bounds via flag algebras"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="turanflag",
    version="1.0.0",
    description="Flag-algebra upper bounds and exact certificates for 3-graph Turan densities",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["turanflag", "turanflag.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX :: Linux",
        "Operating System :: MacOS :: MacOS X",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "psutil>=5.9.0",
        "tomli>=2.0.0;python_version<'3.11'",
        "numpy>=1.21",
        "sympy>=1.9",
    ],
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={
        "console_scripts": [
            "turanflag=turanflag.cli:main",
        ],
    },
    keywords="hypergraph turan flag-algebra sdp csdp lagrangian extremal combinatorics",
)
