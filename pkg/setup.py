#!/usr/bin/env python
#
# Copyright 2026 The vilenkin-lab Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Setup script for the vilenkin-lab library."""


import os
import re
from setuptools import setup

PACKAGES = ['vilenkinlab']

DEPENDENCIES = ['numpy>=1.20', 'PyYAML>=6.0, <7.0']

TEST_DEPENDENCIES = ['pyfakefs>=5.1.0']

CLASSIFIERS = [
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: Apache Software License',
    'Programming Language :: Python :: 3.7',
    'Topic :: Scientific/Engineering :: Mathematics',
]


def GetVersion():
  """Gets the version from vilenkinlab/common.py.

  We can't import this directly because new users would get ImportErrors on our
  third party dependencies.

  Returns:
    The version of the library.
  """
  with open(os.path.join('vilenkinlab', 'common.py')) as versions_file:
    source = versions_file.read()
  return re.search('\\nVERSION = \'(.*?)\'', source).group(1)


long_description = """
===========================================
vilenkin-lab
===========================================

Kernels, Fejer means, martingale Hardy space norms and divergence
constructions on bounded Vilenkin groups, computed exactly at a finite
resolution with a fast mixed-radix transform.

Supported Python Versions
=========================

This library is supported for Python 3.7+.

Installation
============

* Install with a tool such as pip::

  $ pip install vilenkin-lab

* Install manually after downloading and extracting the tarball::

  $ python setup.py install

Usage
=====

  $ vilenkin-lab run configs/gram_mixed.json
  $ vilenkin-lab check
"""

setup(name='vilenkin-lab',
      version=GetVersion(),
      description='Fourier analysis on bounded Vilenkin groups',
      author='The vilenkin-lab Authors',
      license='Apache License 2.0',
      long_description=long_description,
      packages=PACKAGES,
      package_data={'vilenkinlab': ['data/*.json']},
      platforms='any',
      keywords='vilenkin walsh fejer hardy martingale',
      classifiers=CLASSIFIERS,
      install_requires=DEPENDENCIES,
      tests_require=TEST_DEPENDENCIES,
      entry_points={
          'console_scripts': ['vilenkin-lab = vilenkinlab.cli:main'],
      },
      test_suite='tests')
