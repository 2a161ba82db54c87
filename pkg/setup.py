#!/usr/bin/env python3
"""Setup script for the AC-Lite captioning package."""

from setuptools import setup, find_packages

# Read the README file for long description
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()

setup(
    name="ac-lite-captioning",
    version="1.0.0",
    description="Lightweight attention-based image captioning: tensor kernel, training, metrics, complexity analysis and CLI",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(include=['aclite', 'aclite.*']),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Scientific/Engineering :: Image Recognition",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Programming Language :: Python :: 3.14",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy",
        "logManager @ git+https://github.com/hendriksen-mark/logManager.git"
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "aclite=aclite:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
