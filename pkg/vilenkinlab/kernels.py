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

"""Rademacher functions, Vilenkin characters, Dirichlet and Fejer kernels."""

import collections
import logging

import numpy as np

import vilenkinlab.errors
import vilenkinlab.transform


_logger = logging.getLogger(__name__)

DIRICHLET = 'dirichlet'
FEJER = 'fejer'

# Absolute slack allowed when checking the lower bound on catalogued cells.
BOUND_TOLERANCE = 1e-9

# One catalogued cylinder: the kernel modulus q|K_q| is at least `bound` on
# every depth-N cell in `cells`.
KernelBoundCell = collections.namedtuple(
    'KernelBoundCell', ['k', 's', 'digit_low', 'digit_high', 'depth', 'cells',
                        'bound'])

# The outcome of checking one catalogued cylinder.
KernelBoundCheck = collections.namedtuple(
    'KernelBoundCheck', ['cell', 'minimum', 'passed'])


def Rademacher(k, x):
  """Returns r_k(x) = exp(2 pi i x_k / m_k).

  Raises:
    ResolutionError: If k is not below the resolution.
  """
  structure = x.structure
  if not 0 <= k < structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'Rademacher index %d is outside the resolution %d.'
        % (k, structure.resolution))
  return complex(structure.RootsOfUnity()[k][x.digits[k]])


def Character(n, x):
  """Returns psi_n(x), the product of r_k(x)^{n_k}.

  Raises:
    ResolutionError: If n is not below M_N.
  """
  structure = x.structure
  value = 1.0 + 0.0j
  roots = structure.RootsOfUnity()
  for k, nk in enumerate(structure.IndexToDigits(n)):
    if nk:
      value *= roots[k][(nk * x.digits[k]) % structure.m[k]]
  return complex(value)


def CharacterFunction(structure, n):
  """Returns psi_n as a StepFunction."""
  return vilenkinlab.transform.StepFunction(
      structure, vilenkinlab.transform.CharacterSamples(structure, n))


def _CheckKernelOrder(structure, n):
  if n < 1:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Kernel order must be at least 1, got %d.' % n)
  if n > structure.cells:
    raise vilenkinlab.errors.ResolutionError(
        'Kernel order %d exceeds M_N = %d.' % (n, structure.cells))


def DirichletKernel(structure, n):
  """Returns D_n = sum_{k < n} psi_k as a StepFunction.

  Raises:
    VilenkinLabValueError: If n is below 1.
    ResolutionError: If n exceeds M_N.
  """
  _CheckKernelOrder(structure, n)
  coeffs = np.zeros(structure.cells)
  coeffs[:n] = 1.0
  return vilenkinlab.transform.Synthesize(
      vilenkinlab.transform.Spectrum(structure, coeffs))


def FejerKernel(structure, n):
  """Returns K_n = (1/n) sum_{k=1}^n D_k = sum_{j < n} (1 - j/n) psi_j.

  Raises:
    VilenkinLabValueError: If n is below 1.
    ResolutionError: If n exceeds M_N.
  """
  _CheckKernelOrder(structure, n)
  return vilenkinlab.transform.Synthesize(vilenkinlab.transform.Spectrum(
      structure, vilenkinlab.transform.FejerWeights(structure, n)))


def FejerKernelDirect(structure, n):
  """Returns K_n by averaging the Dirichlet kernels D_1, ..., D_n cellwise.

  Each cell accumulates D_k for k = 1..n in ascending order.
  """
  _CheckKernelOrder(structure, n)
  dirichlet = np.zeros(structure.cells, dtype=complex)
  total = np.zeros(structure.cells, dtype=complex)
  for k in range(n):
    dirichlet += vilenkinlab.transform.CharacterSamples(structure, k)
    total += dirichlet
  return vilenkinlab.transform.StepFunction(structure, total / n)


class KernelRequest(object):
  """A request for a Dirichlet or Fejer kernel at a structure's resolution."""

  _BUILDERS = {DIRICHLET: DirichletKernel, FEJER: FejerKernel}

  def __init__(self, kind, n, structure):
    """Initializes a KernelRequest.

    Args:
      kind: 'dirichlet' or 'fejer'.
      n: The kernel order, 1 <= n <= M_N.
      structure: The VilenkinStructure to materialize on.

    Raises:
      VilenkinLabValueError: If the kind is unknown or n is below 1.
      ResolutionError: If n exceeds M_N.
    """
    if kind not in self._BUILDERS:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Unknown kernel kind "%s". Supported kinds: %s'
          % (kind, sorted(self._BUILDERS)))
    _CheckKernelOrder(structure, n)
    self.kind = kind
    self.n = n
    self.structure = structure

  def Materialize(self):
    return self._BUILDERS[self.kind](self.structure, self.n)


def QIndex(a, structure):
  """Returns q_A = M_{2A} + M_{2A-2} + ... + M_2 + M_0.

  Raises:
    ResolutionError: If 2A exceeds the resolution.
  """
  if a < 0:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'q_A needs A >= 0, got %d.' % a)
  if 2 * a > structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'q_%d needs M_%d, the resolution is %d.'
        % (a, 2 * a, structure.resolution))
  return sum(structure.M[2 * i] for i in range(a + 1))


def LowerBoundIndexPairs(a):
  """Yields the (k, s) pairs k = 0..A-3, s = k+2..A-1 of the kernel bound."""
  for k in range(a - 2):
    for s in range(k + 2, a):
      yield k, s


def BoundCells3a(a, structure, index_pairs=LowerBoundIndexPairs):
  """Catalogues the cylinders on which q_{A-1}|K_{q_{A-1}}| is bounded below.

  Each entry pairs I_{2s+1}(s_{2k} e_{2k} + s_{2s} e_{2s}) with the bound
  M_{2k} M_{2s} / 4, for all multipliers 1 <= s_{2k} < m_{2k} and
  1 <= s_{2s} < m_{2s}.

  Args:
    a: The level A; no cells are catalogued for A < 3.
    structure: The VilenkinStructure.
    [optional]
    index_pairs: A callable mapping A to an iterable of (k, s) pairs; replace
      it to test another reading of the index set.

  Returns:
    A list of KernelBoundCell.

  Raises:
    ResolutionError: If 2A - 1 exceeds the resolution.
  """
  if a < 3:
    return []
  if 2 * a - 1 > structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'The catalogue for A = %d needs resolution %d, got %d.'
        % (a, 2 * a - 1, structure.resolution))
  catalogue = []
  for k, s in index_pairs(a):
    low, high = 2 * k, 2 * s
    for digit_low in range(1, structure.m[low]):
      for digit_high in range(1, structure.m[high]):
        digits = [0] * structure.resolution
        digits[low] = digit_low
        digits[high] = digit_high
        point = structure.Point(digits)
        catalogue.append(KernelBoundCell(
            k=k, s=s, digit_low=digit_low, digit_high=digit_high,
            depth=high + 1, cells=structure.CylinderCells(point, high + 1),
            bound=structure.M[low] * structure.M[high] / 4.0))
  return catalogue


def CheckBound3a(a, structure, index_pairs=LowerBoundIndexPairs):
  """Verifies the catalogued lower bounds on every depth-N subcell.

  Returns:
    A list of KernelBoundCheck, one per catalogued cylinder.
  """
  catalogue = BoundCells3a(a, structure, index_pairs)
  if not catalogue:
    return []
  q = QIndex(a - 1, structure)
  modulus = q * FejerKernel(structure, q).Abs()
  checks = []
  for cell in catalogue:
    minimum = float(modulus[cell.cells.start:cell.cells.stop].min())
    passed = minimum >= cell.bound - BOUND_TOLERANCE
    if not passed:
      _logger.warning('Kernel bound fails on %s: %r < %r', cell, minimum,
                      cell.bound)
    checks.append(KernelBoundCheck(cell=cell, minimum=minimum, passed=passed))
  return checks
