"""Setup script for chaincraft."""

from setuptools import setup, find_packages

setup(
    name="chaincraft",
    version="0.1.0",
    description="Chains of 2D path geometries via the Fefferman metric",
    author="Chaincraft Team",
    license="MIT",
    packages=find_packages(exclude=["tests", "examples*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24",
        "pydantic>=2.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "black>=23.0.0",
            "isort>=5.0.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "chaincraft=src.main:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
)
