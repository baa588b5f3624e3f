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

"""Unit tests to cover the errors module."""


import unittest

from vilenkinlab import errors


class ErrorsTest(unittest.TestCase):

  """Tests for the vilenkinlab.errors module."""

  def testVilenkinLabError(self):
    """Coverage test only for the VilenkinLabError class."""
    errors.VilenkinLabError('error message')

  def testVilenkinLabValueError(self):
    """Coverage test only for the VilenkinLabValueError class."""
    errors.VilenkinLabValueError('error message2')

  def testResolutionError_isValueError(self):
    self.assertTrue(issubclass(errors.ResolutionError,
                               errors.VilenkinLabValueError))

  def testCapacityError(self):
    error = errors.CapacityError('too big', required_resolution=17,
                                 required_cells=2 ** 17)
    self.assertEqual(17, error.required_resolution)
    self.assertEqual(131072, error.required_cells)
    self.assertEqual('too big', str(error))
    self.assertNotIsInstance(error, errors.VilenkinLabValueError)

  def testCapacityError_defaults(self):
    error = errors.CapacityError('too big')
    self.assertIsNone(error.required_resolution)
    self.assertIsNone(error.required_cells)

  def testCheckFailure(self):
    error = errors.CheckFailure(iter(['gram', 'parseval']))
    self.assertEqual(['gram', 'parseval'], error.failed_checks)
    self.assertIn('gram, parseval', str(error))


if __name__ == '__main__':
  unittest.main()
