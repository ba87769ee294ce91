import pathlib
from sys import version_info

from setuptools import find_packages
from setuptools import setup

install_requires = [
    "jinja2 >= 2.9",
    "numpy >= 1.22",
    "rich >= 11.2.0",
    "scipy >= 1.8",
]

lint_requires = [
    "black",
    "flake8",
    "isort",
    "mypy",
    "check-manifest",
]

test_requires = [
    "coverage[toml]",
    "hypothesis",
    "pytest",
    "pytest-cov",
    "statsmodels",
]

benchmark_requires = [
    "asv",
]

about = {}
with open("src/metaparadox/_version.py") as fp:
    exec(fp.read(), about)


HERE = pathlib.Path(__file__).parent.resolve()
LONG_DESCRIPTION = (HERE / "README.md").read_text(encoding="utf-8")

setup(
    name="metaparadox",
    version=about["__version__"],
    python_requires=">=3.8.0",
    description=(
        "Fixed-effect and random-effects meta-analysis with a significance "
        "reversal paradox auditor"
    ),
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Medical Science Apps.",
    ],
    license="Apache 2.0",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    package_data={"metaparadox.reporters": ["templates/*.svg"]},
    include_package_data=True,
    install_requires=install_requires,
    extras_require={
        "test": test_requires,
        "lint": lint_requires,
        "benchmark": benchmark_requires,
        "dev": test_requires + lint_requires + benchmark_requires,
    },
    entry_points={
        "console_scripts": [
            f"metaparadox{version_info.major}.{version_info.minor}"
            "=metaparadox.__main__:main",
            "metaparadox=metaparadox.__main__:main",
        ],
    },
)
