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

"""Vilenkin-Fourier analysis and synthesis at a fixed resolution.

Functions are stored by their value on each depth-N cell (cell ids as in
vilenkinlab.group) and spectra by the coefficients f^(0), ..., f^(M_N - 1).
The fast transform runs one stage per coordinate in ascending order; stage k
applies the m_k point character matrix along the k-th digit axis, so every
output entry is produced by the same sequence of operations whatever the
input.
"""

import functools
import json
import logging
import math

import numpy as np

import vilenkinlab.errors
import vilenkinlab.group


_logger = logging.getLogger(__name__)

_VALUES_KIND = 'values'
_COEFFS_KIND = 'coeffs'


class _CellVector(object):
  """Shared plumbing of StepFunction and Spectrum."""

  _KIND = None

  def __init__(self, structure, data):
    data = np.array(data, dtype=complex).reshape(-1)
    if data.shape[0] != structure.cells:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Expected %d entries for %r, got %d.'
          % (structure.cells, structure, data.shape[0]))
    data.setflags(write=False)
    self.structure = structure
    self._data = data

  def _Check(self, other):
    if other.structure != self.structure:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Structure mismatch: %r and %r.' % (self.structure, other.structure))

  def _Combine(self, other, operation):
    if isinstance(other, _CellVector):
      self._Check(other)
      other = other._data
    return type(self)(self.structure, operation(self._data, other))

  def __add__(self, other):
    return self._Combine(other, np.add)

  def __sub__(self, other):
    return self._Combine(other, np.subtract)

  def __mul__(self, other):
    return self._Combine(other, np.multiply)

  __radd__ = __add__
  __rmul__ = __mul__

  def __neg__(self):
    return type(self)(self.structure, -self._data)

  def __truediv__(self, scalar):
    return type(self)(self.structure, self._data / scalar)

  def ToJson(self):
    """Serializes to {structure, kind, data: [[re, im], ...]}."""
    return json.dumps({
        'structure': self.structure.ToDict(),
        'kind': self._KIND,
        'data': [[float(z.real), float(z.imag)] for z in self._data],
    })


class StepFunction(_CellVector):
  """A complex function constant on each depth-N cell.

  Attributes:
    structure: The VilenkinStructure the function lives on.
    values: A read-only complex array of length M_N.
  """

  _KIND = _VALUES_KIND

  @property
  def values(self):
    return self._data

  def Integral(self):
    """Returns the exact Haar integral (1/M_N) sum values."""
    return complex(self._data.sum() / self.structure.cells)

  def Abs(self):
    return np.abs(self._data)

  def SupNorm(self):
    return float(np.abs(self._data).max())

  def __repr__(self):
    return 'StepFunction(%r)' % (self.structure,)


class Spectrum(_CellVector):
  """The Vilenkin-Fourier coefficients of a StepFunction.

  Attributes:
    structure: The VilenkinStructure the spectrum belongs to.
    coeffs: A read-only complex array, coeffs[j] = f^(j).
  """

  _KIND = _COEFFS_KIND

  @property
  def coeffs(self):
    return self._data

  def Truncated(self, low, high=None):
    """Returns the spectrum with coefficients outside [low, high) zeroed."""
    high = self.structure.cells if high is None else high
    coeffs = np.zeros_like(self._data)
    coeffs[low:high] = self._data[low:high]
    return Spectrum(self.structure, coeffs)

  def Support(self):
    return np.flatnonzero(self._data)

  def __repr__(self):
    return 'Spectrum(%r)' % (self.structure,)


def FromJson(document):
  """Parses the JSON form produced by ToJson.

  Args:
    document: A JSON string.

  Returns:
    A StepFunction or a Spectrum depending on the kind field.

  Raises:
    VilenkinLabValueError: If the document is malformed.
  """
  try:
    data = json.loads(document)
    structure = vilenkinlab.group.VilenkinStructure(
        data['structure']['m'], data['structure'].get('resolution'))
    entries = [complex(re, im) for re, im in data['data']]
    kind = data['kind']
  except (ValueError, KeyError, TypeError) as e:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Malformed function document: %s' % e)
  if kind == _VALUES_KIND:
    return StepFunction(structure, entries)
  elif kind == _COEFFS_KIND:
    return Spectrum(structure, entries)
  raise vilenkinlab.errors.VilenkinLabValueError('Unknown kind "%s".' % kind)


class MaximalWeight(object):
  """The weight (n + 1)^(1/p - 2) log^(2[1/2 + p]) (n + 1) for 0 < p <= 1/2.

  The logarithm is natural; its base only rescales the constant of the bound.
  """

  def __init__(self, p):
    p = float(p)
    if not 0.0 < p <= 0.5:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'The weighted maximal operator needs 0 < p <= 1/2, got %r.' % p)
    self.p = p
    self.exponent = 1.0 / p - 2.0
    self.log_power = 2 * int(math.floor(0.5 + p))

  def Value(self, n):
    return ((n + 1.0) ** self.exponent) * (math.log(n + 1.0) ** self.log_power)

  def __repr__(self):
    return 'MaximalWeight(p=%r)' % self.p


def CharacterSamples(structure, n):
  """Returns psi_n sampled on every depth-N cell.

  Powers of the generalized Rademacher functions are read from the
  precomputed roots of unity, so no transcendental call is made per cell.

  Raises:
    ResolutionError: If n is not below M_N.
  """
  digits_of_n = structure.IndexToDigits(n)
  cell_digits = structure.CellDigits()
  roots = structure.RootsOfUnity()
  samples = np.ones(structure.cells, dtype=complex)
  for k, nk in enumerate(digits_of_n):
    if nk:
      samples *= roots[k][(nk * cell_digits[:, k]) % structure.m[k]]
  return samples


@functools.lru_cache(maxsize=None)
def _StageMatrices(m, inverse):
  """Per-coordinate character matrices, [n, x] -> exp(-+2 pi i n x / m_k)."""
  matrices = []
  for mk in m:
    roots = np.exp(2j * np.pi * np.arange(mk) / mk)
    exponents = np.outer(np.arange(mk), np.arange(mk)) % mk
    matrix = roots[exponents] if inverse else np.conj(roots[exponents])
    matrix.setflags(write=False)
    matrices.append(matrix)
  return tuple(matrices)


def _ApplyStages(array, matrices):
  for axis, matrix in enumerate(matrices):
    array = np.moveaxis(np.tensordot(matrix, array, axes=([1], [axis])), 0,
                        axis)
  return array


def Analyze(f):
  """Computes the spectrum of f with the fast mixed-radix transform.

  The cost is O(M_N * sum m_k).

  Args:
    f: A StepFunction.

  Returns:
    A Spectrum, coeffs[k] = (1/M_N) sum_cells f(x) conj(psi_k(x)).
  """
  structure = f.structure
  if structure.resolution == 0:
    return Spectrum(structure, f.values)
  _logger.debug('Analyzing %d cells in %d stages.', structure.cells,
                structure.resolution)
  array = f.values.reshape(structure.m)
  array = _ApplyStages(array, _StageMatrices(structure.m, False))
  order = tuple(reversed(range(structure.resolution)))
  coeffs = array.transpose(order).reshape(-1) / structure.cells
  return Spectrum(structure, coeffs)


def Synthesize(s):
  """Rebuilds the StepFunction sum_j s.coeffs[j] psi_j."""
  structure = s.structure
  if structure.resolution == 0:
    return StepFunction(structure, s.coeffs)
  order = tuple(reversed(range(structure.resolution)))
  array = s.coeffs.reshape(tuple(reversed(structure.m))).transpose(order)
  array = _ApplyStages(array, _StageMatrices(structure.m, True))
  return StepFunction(structure, array.reshape(-1))


def AnalyzeNaive(f, indices=None):
  """Direct O(M_N^2) evaluation of the coefficients, used as an oracle.

  Args:
    f: A StepFunction.
    [optional]
    indices: An iterable of coefficient indices to compute. Defaults to all.

  Returns:
    A Spectrum when indices is None, otherwise an array of the requested
    coefficients.
  """
  structure = f.structure
  wanted = range(structure.cells) if indices is None else list(indices)
  coeffs = np.array(
      [np.vdot(CharacterSamples(structure, k), f.values) / structure.cells
       for k in wanted], dtype=complex)
  if indices is None:
    return Spectrum(structure, coeffs)
  return coeffs


def GramMatrix(structure):
  """Returns G[a, b] = (1/M_N) sum_x conj(psi_a(x)) psi_b(x) for a, b < M_N."""
  samples = np.array([CharacterSamples(structure, n)
                      for n in range(structure.cells)])
  return samples.conj().dot(samples.T) / structure.cells


def _CheckOrder(structure, n, allow_zero):
  if n < 0 or (n == 0 and not allow_zero):
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Order %d is undefined here.' % n)
  if n > structure.cells:
    raise vilenkinlab.errors.ResolutionError(
        'Order %d exceeds M_N = %d.' % (n, structure.cells))


def PartialSum(s, n):
  """Returns S_n f = sum_{k < n} f^(k) psi_k, with S_0 f = 0.

  Raises:
    ResolutionError: If n exceeds M_N.
  """
  _CheckOrder(s.structure, n, allow_zero=True)
  return Synthesize(s.Truncated(0, n))


def FejerWeights(structure, n):
  """Returns the multipliers (1 - j/n) 1_{j < n} of the n-th Fejer mean."""
  _CheckOrder(structure, n, allow_zero=False)
  weights = np.zeros(structure.cells)
  weights[:n] = 1.0 - np.arange(n) / float(n)
  return weights


def FejerMean(s, n):
  """Returns sigma_n f = (1/n) sum_{k=1}^n S_k f.

  Raises:
    VilenkinLabValueError: If n is zero.
    ResolutionError: If n exceeds M_N.
  """
  return Synthesize(Spectrum(s.structure, s.coeffs * FejerWeights(
      s.structure, n)))


def FejerMeanSequence(s, n_max):
  """Yields (n, values of sigma_n f) for n = 1, ..., n_max.

  Uses sigma_n f = S_n f - (1/n) sum_{j < n} j f^(j) psi_j and extends both
  sums by one character per step, in ascending j.

  Raises:
    ResolutionError: If n_max exceeds M_N.
  """
  structure = s.structure
  _CheckOrder(structure, n_max, allow_zero=False)
  partial = np.zeros(structure.cells, dtype=complex)
  moment = np.zeros(structure.cells, dtype=complex)
  for n in range(1, n_max + 1):
    j = n - 1
    coefficient = s.coeffs[j]
    if coefficient:
      term = coefficient * CharacterSamples(structure, j)
      partial += term
      moment += j * term
    yield n, partial - moment / n


def Translate(f, y):
  """Returns the function x -> f(x - y)."""
  structure = f.structure
  if y.structure != structure:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Point %r does not belong to %r.' % (y, structure))
  digits = (structure.CellDigits() - np.array(y.digits, dtype=np.int64)) % (
      np.array(structure.m, dtype=np.int64))
  strides = np.array([structure.cells // structure.M[k + 1]
                      for k in range(structure.resolution)], dtype=np.int64)
  return StepFunction(structure, f.values[digits.dot(strides)])


def Convolve(f, g):
  """Returns (f * g)(x) = (1/M_N) sum_t f(t) g(x - t) via the transform.

  Raises:
    VilenkinLabValueError: If the structures differ.
  """
  if f.structure != g.structure:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Structure mismatch: %r and %r.' % (f.structure, g.structure))
  return Synthesize(Analyze(f) * Analyze(g))


def BlockAverage(f, n):
  """Averages f over every cylinder of depth n.

  Raises:
    ResolutionError: If n exceeds the resolution.
  """
  structure = f.structure
  if not 0 <= n <= structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'Depth %d is outside 0..%d.' % (n, structure.resolution))
  blocks = f.values.reshape(structure.M[n], -1)
  averages = blocks.mean(axis=1)
  return StepFunction(structure, np.repeat(averages, blocks.shape[1]))


def Condexp(s, n):
  """Returns the martingale level f^(n) = S_{M_n} f.

  Raises:
    ResolutionError: If n exceeds the resolution.
  """
  if not 0 <= n <= s.structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'Level %d is outside 0..%d.' % (n, s.structure.resolution))
  return PartialSum(s, s.structure.M[n])


def MaximalFunction(s):
  """Returns f* = max over n = 0..N of |f^(n)|, evaluated cellwise."""
  f = Synthesize(s)
  structure = s.structure
  maximal = np.zeros(structure.cells)
  for n in range(structure.resolution + 1):
    maximal = np.maximum(maximal, BlockAverage(f, n).Abs())
  return StepFunction(structure, maximal)


def FejerMaximal(s, n_max):
  """Returns max over 1 <= n <= n_max of |sigma_n f|."""
  maximal = np.zeros(s.structure.cells)
  for _, values in FejerMeanSequence(s, n_max):
    maximal = np.maximum(maximal, np.abs(values))
  return StepFunction(s.structure, maximal)


def WeightedMaximalFejer(s, p, n_max):
  """Returns sup_{1 <= n <= n_max} |sigma_n f| / weight_p(n).

  Raises:
    VilenkinLabValueError: If p is outside (0, 1/2].
    ResolutionError: If n_max exceeds M_N.
  """
  weight = MaximalWeight(p)
  maximal = np.zeros(s.structure.cells)
  for n, values in FejerMeanSequence(s, n_max):
    maximal = np.maximum(maximal, np.abs(values) / weight.Value(n))
  return StepFunction(s.structure, maximal)
