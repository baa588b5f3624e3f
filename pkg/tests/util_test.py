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

"""Unit tests to cover the util module."""


import logging
import unittest

import numpy as np

import vilenkinlab.util
from . import testing


class XorShift64StarTest(unittest.TestCase):
  """Tests for the XorShift64Star generator."""

  def testNextUInt64_firstStepFromOne(self):
    # s = 1: s ^= s >> 12 -> 1; s ^= s << 25 -> 1 + 2**25; s ^= s >> 27 -> same.
    generator = vilenkinlab.util.XorShift64Star(1)
    expected = ((1 + 2 ** 25) * 0x2545F4914F6CDD1D) % 2 ** 64
    self.assertEqual(expected, generator.NextUInt64())

  def testZeroSeed_isReplaced(self):
    zero = vilenkinlab.util.XorShift64Star(0)
    replaced = vilenkinlab.util.XorShift64Star(0x9E3779B97F4A7C15)
    self.assertEqual([replaced.NextUInt64() for _ in range(5)],
                     [zero.NextUInt64() for _ in range(5)])
    self.assertNotEqual(0, vilenkinlab.util.XorShift64Star(0).NextUInt64())

  def testSameSeed_sameStream(self):
    first = vilenkinlab.util.XorShift64Star(42)
    second = vilenkinlab.util.XorShift64Star(42)
    self.assertEqual([first.NextUInt64() for _ in range(10)],
                     [second.NextUInt64() for _ in range(10)])

  def testNextUInt64_staysInRange(self):
    generator = vilenkinlab.util.XorShift64Star(7)
    for _ in range(100):
      self.assertTrue(0 <= generator.NextUInt64() < 2 ** 64)

  def testNextDouble_usesTopBits(self):
    generator = vilenkinlab.util.XorShift64Star(3)
    raw = vilenkinlab.util.XorShift64Star(3).NextUInt64()
    self.assertEqual((raw >> 11) * 2.0 ** -53, generator.NextDouble())

  def testComplexArray(self):
    values = vilenkinlab.util.XorShift64Star(5).ComplexArray(200)
    self.assertEqual((200,), values.shape)
    self.assertTrue(np.all(np.abs(values.real) <= 1.0))
    self.assertTrue(np.all(np.abs(values.imag) <= 1.0))

    generator = vilenkinlab.util.XorShift64Star(5)
    u = generator.NextDouble()
    v = generator.NextDouble()
    self.assertEqual(complex(2 * u - 1, 2 * v - 1), values[0])

  def testDoubleArray(self):
    values = vilenkinlab.util.XorShift64Star(9).DoubleArray(50)
    self.assertTrue(np.all((values >= 0.0) & (values < 1.0)))


class FormatFloatTest(unittest.TestCase):
  """Tests for FormatFloat."""

  def testRoundTrips(self):
    for value in (0.1, 1.0 / 3.0, 2.0 ** -40, 12345.678):
      self.assertEqual(value, float(vilenkinlab.util.FormatFloat(value)))

  def testIntegralValue(self):
    self.assertEqual('4', vilenkinlab.util.FormatFloat(4))


class ConfigureDefaultLoggingTest(testing.CleanLoggingTestCase):
  """Tests for ConfigureDefaultLogging."""

  def testLevels(self):
    package_logger = logging.getLogger('vilenkinlab')
    vilenkinlab.util.ConfigureDefaultLogging(0)
    self.assertEqual(logging.WARNING, package_logger.level)
    vilenkinlab.util.ConfigureDefaultLogging(1)
    self.assertEqual(logging.INFO, package_logger.level)
    vilenkinlab.util.ConfigureDefaultLogging(3)
    self.assertEqual(logging.DEBUG, package_logger.level)

  def testInstallsOneHandler(self):
    package_logger = logging.getLogger('vilenkinlab')
    package_logger.handlers = []
    vilenkinlab.util.ConfigureDefaultLogging()
    vilenkinlab.util.ConfigureDefaultLogging()
    self.assertEqual(1, len(package_logger.handlers))


if __name__ == '__main__':
  unittest.main()
