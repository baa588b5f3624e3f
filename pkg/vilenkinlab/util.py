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

"""Utilities used by the library."""

import logging

import numpy as np


LOGGER_FORMAT = '[%(asctime)s - %(name)s - %(levelname)s] %(message)s'

_MASK64 = (1 << 64) - 1
_ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15
_XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D
_DOUBLE_SCALE = 2.0 ** -53


def ConfigureDefaultLogging(verbosity=0):
  """Installs a stream handler on the package logger.

  Args:
    verbosity: 0 for WARNING, 1 for INFO, 2 or more for DEBUG.
  """
  level = logging.WARNING
  if verbosity == 1:
    level = logging.INFO
  elif verbosity >= 2:
    level = logging.DEBUG

  package_logger = logging.getLogger('vilenkinlab')
  if not package_logger.handlers:
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOGGER_FORMAT))
    package_logger.addHandler(handler)
  package_logger.setLevel(level)


def FormatFloat(value):
  """Formats a real number with 17 significant digits.

  Args:
    value: A real number.

  Returns:
    A string that round-trips to the same double.
  """
  return '%.17g' % float(value)


class XorShift64Star(object):
  """The xorshift64* generator used for every randomized input.

  The state is a 64-bit unsigned integer s. One step is
    s ^= s >> 12; s ^= (s << 25) mod 2**64; s ^= s >> 27
  and the emitted value is (s * 0x2545F4914F6CDD1D) mod 2**64. A zero seed
  is replaced by 0x9E3779B97F4A7C15 since zero is a fixed point.
  """

  def __init__(self, seed):
    seed = int(seed) & _MASK64
    self._state = seed if seed else _ZERO_SEED_REPLACEMENT

  def NextUInt64(self):
    s = self._state
    s ^= s >> 12
    s ^= (s << 25) & _MASK64
    s ^= s >> 27
    self._state = s
    return (s * _XORSHIFT_MULTIPLIER) & _MASK64

  def NextDouble(self):
    """Returns a double uniformly drawn from [0, 1) using the top 53 bits."""
    return (self.NextUInt64() >> 11) * _DOUBLE_SCALE

  def NextComplex(self):
    """Returns (2u - 1) + i(2v - 1) for two successive doubles u, v."""
    u = self.NextDouble()
    v = self.NextDouble()
    return complex(2.0 * u - 1.0, 2.0 * v - 1.0)

  def DoubleArray(self, size):
    return np.array([self.NextDouble() for _ in range(size)], dtype=float)

  def ComplexArray(self, size):
    return np.array([self.NextComplex() for _ in range(size)], dtype=complex)
