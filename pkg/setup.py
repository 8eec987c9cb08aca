"""Setup script for fractraffic - fractal analysis of network traffic traces."""

from pathlib import Path

from setuptools import find_packages, setup

# Read README
readme_file = Path(__file__).parent / "README.md"
long_description = (
    readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""
)

setup(
    name="fractraffic",
    version="0.1.0",
    description="Hurst exponent, DFA and local regularity analysis of frame-size traces",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="fractraffic contributors",
    packages=find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    package_data={
        "fractraffic": [
            "presets/*.json",
        ],
    },
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.21",
        "scipy>=1.7",
        "PyYAML>=6.0",
        "blessed>=1.19.0",
    ],
    entry_points={
        "console_scripts": [
            "fractraffic=fractraffic.__main__:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: System :: Networking :: Monitoring",
    ],
    keywords="hurst dfa wavelet long-range-dependence fractal network traffic",
    license="MIT",
)
