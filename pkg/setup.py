from setuptools import setup, find_packages

d = {}
exec(open("zetascope/version.py").read(), None, d)
version = d['version']
long_description = open("README.md").read()

pkg_name = "zetascope"

setup(
    name=pkg_name,
    version=version,
    description="High-precision Riemann zeros from primes through the truncated Euler product",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(),
    package_data={'zetascope.tests': ['data/*.txt']},
    include_package_data=True,
    install_requires=[
        'numpy',
        'scipy',
        'mpmath',
        'joblib',
        'click>=8.0',
    ],
    entry_points={
        'console_scripts': ['zetascope=zetascope.cli:run'],
    },
    classifiers=(
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
    )
)
