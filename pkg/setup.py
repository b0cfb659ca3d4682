import os

import setuptools

with open("README.md") as f:
    long_description = f.read()

with open(os.path.join(os.path.dirname(__file__), 'config', 'requirements', 'base.txt')) as f:
    requirements = [i.strip() for i in f if i.strip()]

setuptools.setup(
    name="gso_framework",
    version="0.1.0",
    author="GSO Framework developers",
    description="Group Search Optimizer family for MLP training with a benchmark CLI",
    long_description=long_description,
    long_description_content_type="text/markdown",
    # collect all packages
    packages=setuptools.find_packages(exclude=("examples", "examples.*")),
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "bench=gso_framework.bench.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
)
