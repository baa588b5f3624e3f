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

"""Arithmetic on bounded Vilenkin groups truncated at a working resolution.

A point of G_m is a digit vector (x_0, ..., x_{N-1}) with x_k in Z_{m_k}.
Integers n are expanded in the generalized number system n = sum n_j M_j with
digit 0 least significant. Depth-N cells are numbered the other way round:
the cell of x has id sum x_k * M_N / M_{k+1}, so digit 0 is the most
significant and every cylinder I_n(x) is a contiguous range of cell ids.
"""

import logging

import numpy as np

import vilenkinlab.errors


_logger = logging.getLogger(__name__)


class GroupPoint(object):
  """A point of G_m, known up to the working resolution of its structure."""

  def __init__(self, digits, structure):
    """Initializes a GroupPoint.

    Args:
      digits: An iterable of N integers, digits[k] in Z_{m_k}.
      structure: The VilenkinStructure the point belongs to.

    Raises:
      VilenkinLabValueError: If a digit is out of range or the length is not N.
    """
    self.digits = structure.ValidateDigits(digits)
    self.structure = structure

  def __eq__(self, other):
    return (isinstance(other, GroupPoint) and self.structure == other.structure
            and self.digits == other.digits)

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.structure, self.digits))

  def __repr__(self):
    return 'GroupPoint(%s)' % (self.digits,)


class VilenkinStructure(object):
  """The generating sequence m, its M table and the working resolution N.

  Instances are immutable and may be shared freely between threads. The
  cell digit matrix is the one exception: it is built on the first call to
  CellDigits. Concurrent first calls build equal read-only matrices.

  Attributes:
    m: A tuple of the N used entries of the generating sequence.
    M: A tuple of N + 1 integers, M[0] = 1 and M[k + 1] = m[k] * M[k].
    bound: The largest used entry of m (lambda).
    resolution: The working resolution N.
    cells: The number M_N of depth-N cells.
  """

  def __init__(self, m, resolution=None):
    """Initializes a VilenkinStructure.

    Args:
      m: A sequence of integers, each at least 2.
      [optional]
      resolution: The working resolution N. Defaults to len(m).

    Raises:
      VilenkinLabValueError: If an entry of m is below 2, or m is shorter than
        the requested resolution.
    """
    m = [int(value) for value in m]
    if resolution is None:
      resolution = len(m)
    resolution = int(resolution)
    if resolution < 0 or len(m) < resolution:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'The sequence m has %d entries, resolution %d requested.'
          % (len(m), resolution))
    if any(value < 2 for value in m[:resolution]):
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Every entry of m must be at least 2, got %s.' % (m[:resolution],))

    self.m = tuple(m[:resolution])
    self.resolution = resolution
    big_m = [1]
    for value in self.m:
      big_m.append(big_m[-1] * value)
    self.M = tuple(big_m)
    self.cells = self.M[-1]
    self.bound = max(self.m) if self.m else 2
    self._cell_digits = None
    roots = []
    for mk in self.m:
      table = np.exp(2j * np.pi * np.arange(mk) / mk)
      table.setflags(write=False)
      roots.append(table)
    self._roots = tuple(roots)

  @classmethod
  def FromPattern(cls, pattern, repeat_to):
    """Creates a structure whose m repeats the given pattern.

    Args:
      pattern: A non-empty sequence of integers, each at least 2.
      repeat_to: The resolution N; the pattern is repeated to length N.

    Returns:
      A VilenkinStructure.

    Raises:
      VilenkinLabValueError: If the pattern is empty.
    """
    pattern = list(pattern)
    if not pattern:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'The m pattern must not be empty.')
    repeat_to = int(repeat_to)
    m = [pattern[k % len(pattern)] for k in range(repeat_to)]
    return cls(m, repeat_to)

  @classmethod
  def Dyadic(cls, resolution):
    """Creates the Walsh-Paley structure m = (2, 2, ...) at depth N."""
    return cls([2] * int(resolution), resolution)

  def WithResolution(self, resolution):
    """Returns a structure with the same leading m entries at depth N.

    Raises:
      VilenkinLabValueError: If the resolution exceeds the known entries.
    """
    return VilenkinStructure(self.m, resolution)

  def __eq__(self, other):
    return isinstance(other, VilenkinStructure) and self.m == other.m

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.m)

  def __repr__(self):
    return 'VilenkinStructure(m=%s)' % (list(self.m),)

  def ToDict(self):
    return {'m': list(self.m), 'resolution': self.resolution}

  def ValidateDigits(self, digits):
    """Checks that digits form a point of the truncated group.

    Args:
      digits: An iterable of integers.

    Returns:
      The digits as a tuple of ints.

    Raises:
      VilenkinLabValueError: If the length is not N or a digit is out of range.
    """
    digits = tuple(int(d) for d in digits)
    if len(digits) != self.resolution:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Expected %d digits, got %d.' % (self.resolution, len(digits)))
    for k, digit in enumerate(digits):
      if not 0 <= digit < self.m[k]:
        raise vilenkinlab.errors.VilenkinLabValueError(
            'Digit %d at position %d is outside Z_%d.'
            % (digit, k, self.m[k]))
    return digits

  def Point(self, digits):
    return GroupPoint(digits, self)

  def Zero(self):
    return GroupPoint((0,) * self.resolution, self)

  def IndexToDigits(self, n, length=None):
    """Expands n = sum n_j M_j in the generalized number system.

    Args:
      n: A non-negative integer.
      [optional]
      length: The number of digits to return, at most N. When given, n must be
        below M_length; otherwise n must be below M_N.

    Returns:
      A tuple of digits, digit 0 least significant.

    Raises:
      ResolutionError: If n does not fit in the requested number of digits.
    """
    n = int(n)
    if length is None:
      length = self.resolution
    if length > self.resolution:
      raise vilenkinlab.errors.ResolutionError(
          'Requested %d digits, the resolution is %d.'
          % (length, self.resolution))
    if n < 0 or n >= self.M[length]:
      raise vilenkinlab.errors.ResolutionError(
          'Index %d is outside [0, M_%d) = [0, %d).'
          % (n, length, self.M[length]))
    digits = []
    for k in range(length):
      n, digit = divmod(n, self.m[k])
      digits.append(digit)
    return tuple(digits)

  def DigitsToIndex(self, digits):
    """Returns sum digits[j] * M_j.

    Raises:
      VilenkinLabValueError: If a digit is out of range.
    """
    digits = tuple(int(d) for d in digits)
    if len(digits) > self.resolution:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Got %d digits, the resolution is %d.'
          % (len(digits), self.resolution))
    total = 0
    for k, digit in enumerate(digits):
      if not 0 <= digit < self.m[k]:
        raise vilenkinlab.errors.VilenkinLabValueError(
            'Digit %d at position %d is outside Z_%d.'
            % (digit, k, self.m[k]))
      total += digit * self.M[k]
    return total

  def LeadingPosition(self, n):
    """Returns |n|, the position of the leading nonzero digit of n.

    Raises:
      VilenkinLabValueError: If n is zero or negative.
      ResolutionError: If n is not below M_N.
    """
    n = int(n)
    if n <= 0:
      raise vilenkinlab.errors.VilenkinLabValueError(
          '|n| is undefined for n = %d.' % n)
    if n >= self.cells:
      raise vilenkinlab.errors.ResolutionError(
          '|%d| needs digits beyond the resolution %d.' % (n, self.resolution))
    position = 0
    while self.M[position + 1] <= n:
      position += 1
    return position

  def _CheckSameStructure(self, *points):
    for point in points:
      if point.structure != self:
        raise vilenkinlab.errors.VilenkinLabValueError(
            'Point %r belongs to %r, not %r.' % (point, point.structure, self))

  def AddPoints(self, x, y):
    """Coordinatewise addition mod m_k, without carries."""
    self._CheckSameStructure(x, y)
    return GroupPoint(
        [(a + b) % mk for a, b, mk in zip(x.digits, y.digits, self.m)], self)

  def SubPoints(self, x, y):
    """Coordinatewise subtraction mod m_k, without carries."""
    self._CheckSameStructure(x, y)
    return GroupPoint(
        [(a - b) % mk for a, b, mk in zip(x.digits, y.digits, self.m)], self)

  def BasisPoint(self, k, s=1):
    """Returns s * e_k: digit s at position k and zeros elsewhere.

    Raises:
      ResolutionError: If k is not below N.
      VilenkinLabValueError: If s is not in 1..m_k - 1.
    """
    if not 0 <= k < self.resolution:
      raise vilenkinlab.errors.ResolutionError(
          'Position %d is outside the resolution %d.' % (k, self.resolution))
    if not 1 <= s < self.m[k]:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Multiplier %d is outside 1..%d.' % (s, self.m[k] - 1))
    digits = [0] * self.resolution
    digits[k] = s
    return GroupPoint(digits, self)

  def PointToCell(self, x):
    """Returns the id of the depth-N cell containing x."""
    self._CheckSameStructure(x)
    cell = 0
    for digit, mk in zip(x.digits, self.m):
      cell = cell * mk + digit
    return cell

  def CellToPoint(self, cell):
    """Returns the point whose digits identify the given depth-N cell.

    Raises:
      ResolutionError: If the cell id is outside [0, M_N).
    """
    cell = int(cell)
    if not 0 <= cell < self.cells:
      raise vilenkinlab.errors.ResolutionError(
          'Cell %d is outside [0, %d).' % (cell, self.cells))
    digits = []
    for mk in reversed(self.m):
      cell, digit = divmod(cell, mk)
      digits.append(digit)
    return GroupPoint(reversed(digits), self)

  def CylinderCells(self, x, n):
    """Returns the contiguous range of depth-N cells forming I_n(x).

    Raises:
      ResolutionError: If n exceeds the resolution.
    """
    self._CheckSameStructure(x)
    if not 0 <= n <= self.resolution:
      raise vilenkinlab.errors.ResolutionError(
          'Cylinder depth %d is outside 0..%d.' % (n, self.resolution))
    width = self.cells // self.M[n]
    start = 0
    for k in range(n):
      start = start * self.m[k] + x.digits[k]
    start *= width
    return range(start, start + width)

  def CylinderMeasure(self, n):
    return 1.0 / self.M[n]

  def MeasureOfCells(self, cells):
    return len(cells) / float(self.cells)

  def CellDigits(self):
    """Returns the read-only (M_N, N) matrix of digits of every cell."""
    if self._cell_digits is None:
      if self.resolution:
        columns = np.unravel_index(np.arange(self.cells), self.m)
        digits = np.stack(columns, axis=1).astype(np.int64)
      else:
        digits = np.zeros((1, 0), dtype=np.int64)
      digits.setflags(write=False)
      self._cell_digits = digits
    return self._cell_digits

  def RootsOfUnity(self):
    """Returns a tuple of arrays exp(2 pi i t / m_k) for t in Z_{m_k}."""
    return self._roots

  def CheckCapacity(self, cells_cap):
    """Ensures M_N does not exceed the configured cell cap.

    Raises:
      CapacityError: If M_N is above the cap.
    """
    if self.cells > cells_cap:
      raise vilenkinlab.errors.CapacityError(
          'Resolution %d needs %d cells, the cap is %d.'
          % (self.resolution, self.cells, cells_cap),
          required_resolution=self.resolution, required_cells=self.cells)
    _logger.info('Structure %r uses %d cells (cap %d).', self, self.cells,
                 cells_cap)
