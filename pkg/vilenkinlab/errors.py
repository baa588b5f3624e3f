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

"""Errors used by the vilenkin-lab library."""


class VilenkinLabError(Exception):
  """Parent class of all errors raised by this library."""
  pass


class VilenkinLabValueError(VilenkinLabError):
  """Error indicating that the user input for a function was invalid."""
  pass


class ResolutionError(VilenkinLabValueError):
  """Error indicating that an index or depth exceeds the working resolution."""
  pass


class CapacityError(VilenkinLabError):
  """Error indicating that a computation needs more cells than allowed.

  Attributes:
    required_resolution: The resolution N the computation needs, or None.
    required_cells: The number of depth-N cells the computation needs, or None.
  """

  def __init__(self, message, required_resolution=None, required_cells=None):
    """Initializes a CapacityError.

    Args:
      message: A human readable description of the shortfall.
      [optional]
      required_resolution: The resolution N the computation needs.
      required_cells: The number of cells the computation needs.
    """
    super(CapacityError, self).__init__(message)
    self.required_resolution = required_resolution
    self.required_cells = required_cells


class CheckFailure(VilenkinLabError):
  """Error indicating that one or more assertion-grade checks failed.

  Attributes:
    failed_checks: A list of the names of the failing checks.
  """

  def __init__(self, failed_checks):
    """Initializes a CheckFailure.

    Args:
      failed_checks: An iterable of the names of the failing checks.
    """
    self.failed_checks = list(failed_checks)
    super(CheckFailure, self).__init__(
        'The following checks failed: %s' % ', '.join(self.failed_checks))
