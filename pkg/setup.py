# Copyright 2026 The varsel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import io
import os
import re

import setuptools


# Package metadata.

name = "varsel"
description = (
    "Variable selection by exhaustive, stepwise, genetic and LASSO-path "
    "searches, with a Monte-Carlo benchmark harness"
)

package_root = os.path.abspath(os.path.dirname(__file__))

version = None

with open(os.path.join(package_root, "varsel/version.py")) as fp:
    version_candidates = re.findall(r"(?<=\")\d+.\d+.\d+(?=\")", fp.read())
    assert len(version_candidates) == 1
    version = version_candidates[0]

# Should be one of:
# 'Development Status :: 3 - Alpha'
# 'Development Status :: 4 - Beta'
# 'Development Status :: 5 - Production/Stable'
release_status = "Development Status :: 3 - Alpha"
dependencies = [
    "numpy >= 1.22.0, < 3.0dev",
    "scipy >= 1.8.0, < 2.0dev",
    "pandas >= 1.4.0, < 3.0dev",
    "matplotlib >= 3.5.0, < 4.0dev",
    "PyYAML >= 5.4.0, < 7.0dev",
]
extras = {}


# Setup boilerplate below this line.


readme_filename = os.path.join(package_root, "README.rst")
with io.open(readme_filename, encoding="utf-8") as readme_file:
    readme = readme_file.read()

# Only include the ``varsel`` package. Do not include tests, configs, etc.
packages = [
    package
    for package in setuptools.find_packages()
    if package.startswith("varsel")
]

setuptools.setup(
    name=name,
    version=version,
    description=description,
    long_description=readme,
    author="The varsel Authors",
    license="Apache 2.0",
    classifiers=[
        release_status,
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    platforms="Posix; MacOS X; Windows",
    packages=packages,
    install_requires=dependencies,
    extras_require=extras,
    entry_points={"console_scripts": ["varsel = varsel.cli:main"]},
    python_requires=">=3.9",
    include_package_data=True,
    zip_safe=False,
)
