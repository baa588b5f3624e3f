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

"""Martingales whose Fejer means fail to converge in H_p, 0 < p <= 1/2.

Both constructions are sums of atoms (c / lambda)(D_{M_{t+1}} - D_{M_t}),
each carrying a constant spectrum on one block [M_t, M_{t+1}). The infinite
martingales are truncated at a level A; every statistic below is evaluated
directly on the truncated object.

  * Construction2a, 0 < p < 1/2: blocks t = i for i = 0..A, coefficient M_i.
  * Construction2b, p = 1/2: blocks t = 2 M_i for i = 1..A, coefficient
    M_{2M_i} / M_i^2.
"""

import collections
import logging

import numpy as np

import vilenkinlab.common
import vilenkinlab.errors
import vilenkinlab.kernels
import vilenkinlab.norms
import vilenkinlab.transform


_logger = logging.getLogger(__name__)

HALF = 0.5

FejerErrorTerms = collections.namedtuple(
    'FejerErrorTerms', ['direct', 'mean_term', 'partial_sums_term',
                        'block_term', 'remainder_term', 'reconstructed',
                        'max_error'])


def _RequireResolution(structure, required, what):
  if structure.resolution < required:
    raise vilenkinlab.errors.CapacityError(
        '%s needs resolution N = %d, the structure has N = %d.'
        % (what, required, structure.resolution),
        required_resolution=required)


def _BlockSpectrum(structure, block, value):
  coeffs = np.zeros(structure.cells)
  coeffs[structure.M[block]:structure.M[block + 1]] = value
  return vilenkinlab.transform.Spectrum(structure, coeffs)


def _DirichletDifference(structure, block):
  return (vilenkinlab.kernels.DirichletKernel(structure, structure.M[block + 1])
          - vilenkinlab.kernels.DirichletKernel(structure, structure.M[block]))


def Spectrum2a(a, structure, decay=0.0):
  """Returns the spectrum equal to M_i^(1 - decay) on [M_i, M_{i+1}), i <= A.

  With decay 0 this is the coefficient law of the truncated martingale.

  Raises:
    CapacityError: If the resolution is below A + 1.
  """
  _RequireResolution(structure, a + 1, 'The spectrum with A = %d' % a)
  coeffs = np.zeros(structure.cells)
  for i in range(a + 1):
    coeffs[structure.M[i]:structure.M[i + 1]] = structure.M[i] ** (1.0 - decay)
  return vilenkinlab.transform.Spectrum(structure, coeffs)


def _Atom2aScale(k, p, structure):
  return structure.M[k] ** (1.0 / p - 1.0) / structure.bound


def Atom2a(k, p, structure):
  """Returns (M_k^(1/p - 1) / lambda)(D_{M_{k+1}} - D_{M_k}), a p-atom on I_k.

  Raises:
    CapacityError: If k + 1 exceeds the resolution.
  """
  _RequireResolution(structure, k + 1, 'Atom a_%d' % k)
  return _Atom2aScale(k, p, structure) * _DirichletDifference(structure, k)


def AtomSpectrum2a(k, p, structure):
  """Returns the spectrum of Atom2a: a constant on [M_k, M_{k+1})."""
  _RequireResolution(structure, k + 1, 'Atom a_%d' % k)
  return _BlockSpectrum(structure, k, _Atom2aScale(k, p, structure))


class Construction2a(object):
  """The truncated martingale f^(A) = sum_{i=0}^A (lambda / M_i^(1/p-2)) a_i.

  Attributes:
    p: The exponent, 0 < p < 1/2.
    a: The truncation level A.
    structure: The VilenkinStructure, N >= A + 1.
    spectrum: The Spectrum of f^(A).
  """

  def __init__(self, p, a, structure, spectrum):
    self.p = p
    self.a = a
    self.structure = structure
    self.spectrum = spectrum

  def Coefficient(self, i):
    return self.structure.bound / self.structure.M[i] ** (1.0 / self.p - 2.0)

  def Decomposition(self):
    """Returns the AtomicDecomposition the martingale is assembled from."""
    structure = self.structure
    return vilenkinlab.norms.AtomicDecomposition(
        structure, [self.Coefficient(i) for i in range(self.a + 1)],
        [Atom2a(i, self.p, structure) for i in range(self.a + 1)], self.p,
        intervals=[(structure.Zero(), i) for i in range(self.a + 1)])

  def ClosedFormSpectrum(self):
    """Returns f^(j) = M_i on [M_i, M_{i+1}) for i <= A and 0 elsewhere."""
    return Spectrum2a(self.a, self.structure)


def Build2a(p, a, structure):
  """Builds the truncated martingale of the 0 < p < 1/2 construction.

  Raises:
    VilenkinLabValueError: If p is outside (0, 1/2) or A is negative.
    CapacityError: If the resolution is below A + 1.
  """
  p = float(p)
  if not 0.0 < p < HALF:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'This construction needs 0 < p < 1/2, got %r; use Build2b for 1/2.' % p)
  if a < 0:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The truncation level must be non-negative, got %d.' % a)
  _RequireResolution(structure, a + 1, 'Construction 2a with A = %d' % a)
  construction = Construction2a(p, a, structure, None)
  coeffs = np.zeros(structure.cells, dtype=complex)
  for i in range(a + 1):
    atom = AtomSpectrum2a(i, p, structure)
    coeffs += construction.Coefficient(i) * atom.coeffs
  construction.spectrum = vilenkinlab.transform.Spectrum(structure, coeffs)
  return construction


def ModulusReport2a(construction, n_range):
  """Compares omega(1/M_n, f)_{H_p} with M_n^-(1/p - 2).

  Returns:
    A list of ExperimentRecord with columns omega, bound, ratio.
  """
  p = construction.p
  structure = construction.structure
  records = []
  for n in sorted(n_range):
    omega = vilenkinlab.norms.ModulusOfContinuity(construction.spectrum, n, p)
    bound = structure.M[n] ** -(1.0 / p - 2.0)
    records.append(vilenkinlab.common.ExperimentRecord(
        'counterexample-2a', [('statistic', 'modulus'), ('p', p), ('n', n)],
        [('value', omega), ('bound', bound), ('ratio', omega / bound)]))
  return records


def _CheckLevel(k, low, high):
  if not low <= k <= high:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Level %d is outside %d..%d for this truncation.' % (k, low, high))


def FejerError(spectrum, n):
  """Returns sigma_n f - f."""
  return (vilenkinlab.transform.FejerMean(spectrum, n)
          - vilenkinlab.transform.Synthesize(spectrum))


def Divergence2a(construction, k):
  """Returns the weak-L_p quasinorm (root form) of sigma_{M_k+1} f - f.

  Raises:
    VilenkinLabValueError: If k is not below A.
  """
  _CheckLevel(k, 0, construction.a - 1)
  error = FejerError(construction.spectrum, construction.structure.M[k] + 1)
  return vilenkinlab.norms.WeakLpQuasinorm(error, construction.p)


def DominantTermResidual2a(construction, k):
  """Returns the residual of S_{M_k+1} f - S_{M_k} f = M_k psi_{M_k}.

  The residual is a sup norm taken relative to the sup norm of S_{M_k+1} f.

  Raises:
    VilenkinLabValueError: If k is not below A.
  """
  _CheckLevel(k, 0, construction.a - 1)
  structure = construction.structure
  m_k = structure.M[k]
  upper = vilenkinlab.transform.PartialSum(construction.spectrum, m_k + 1)
  jump = upper - vilenkinlab.transform.PartialSum(construction.spectrum, m_k)
  expected = m_k * vilenkinlab.kernels.CharacterFunction(structure, m_k)
  residual = float(np.abs((jump - expected).values).max())
  return residual / max(1.0, upper.SupNorm())


def FejerDecay(spectrum, k, p):
  """Returns ||sigma_{M_k} f - f||_p."""
  return vilenkinlab.norms.LpQuasinorm(
      FejerError(spectrum, spectrum.structure.M[k]), p)


def Atom2b(i, structure):
  """Returns (M_{2M_i} / lambda)(D_{M_{2M_i+1}} - D_{M_{2M_i}}).

  Raises:
    CapacityError: If 2 M_i + 1 exceeds the resolution.
  """
  block = _Block2b(i, structure)
  return (structure.M[block] / float(structure.bound)) * _DirichletDifference(
      structure, block)


def _Block2b(i, structure):
  if i > structure.resolution:
    raise vilenkinlab.errors.CapacityError(
        'M_%d is beyond the resolution %d.' % (i, structure.resolution),
        required_resolution=i)
  block = 2 * structure.M[i]
  _RequireResolution(structure, block + 1, 'Atom a_%d of construction 2b' % i)
  return block


class Construction2b(object):
  """The truncated martingale f^(A) = sum_{i=1}^A (lambda / M_i^2) a_i.

  Attributes:
    a: The truncation level A.
    structure: The VilenkinStructure, N >= 2 M_A + 1.
    spectrum: The Spectrum of f^(A).
  """

  p = HALF

  def __init__(self, a, structure, spectrum):
    self.a = a
    self.structure = structure
    self.spectrum = spectrum

  def Block(self, i):
    return _Block2b(i, self.structure)

  def BlockValue(self, i):
    """Returns M_{2M_i} / M_i^2, the coefficient on block i."""
    return self.structure.M[self.Block(i)] / float(self.structure.M[i] ** 2)

  def Coefficient(self, i):
    return self.structure.bound / float(self.structure.M[i] ** 2)

  def Decomposition(self):
    structure = self.structure
    indices = range(1, self.a + 1)
    return vilenkinlab.norms.AtomicDecomposition(
        structure, [self.Coefficient(i) for i in indices],
        [Atom2b(i, structure) for i in indices], self.p,
        intervals=[(structure.Zero(), self.Block(i)) for i in indices])

  def ClosedFormSpectrum(self):
    coeffs = np.zeros(self.structure.cells)
    for i in range(1, self.a + 1):
      block = self.Block(i)
      coeffs[self.structure.M[block]:self.structure.M[block + 1]] = (
          self.BlockValue(i))
    return vilenkinlab.transform.Spectrum(self.structure, coeffs)


def RequiredResolution2b(a, structure):
  """Returns 2 M_A + 1, the resolution construction 2b needs."""
  return 2 * structure.M[a] + 1


def Build2b(a, structure):
  """Builds the truncated martingale of the p = 1/2 construction.

  Raises:
    VilenkinLabValueError: If A is below 1.
    CapacityError: If the resolution is below 2 M_A + 1; the message names it.
  """
  if a < 1:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The truncation level must be at least 1, got %d.' % a)
  if a > structure.resolution:
    raise vilenkinlab.errors.CapacityError(
        'Construction 2b with A = %d needs M_%d, the resolution is %d.'
        % (a, a, structure.resolution), required_resolution=a)
  required = RequiredResolution2b(a, structure)
  _RequireResolution(structure, required, 'Construction 2b with A = %d' % a)
  construction = Construction2b(a, structure, None)
  coeffs = np.zeros(structure.cells, dtype=complex)
  for i in range(1, a + 1):
    block = construction.Block(i)
    atom_scale = structure.M[block] / float(structure.bound)
    coeffs += construction.Coefficient(i) * _BlockSpectrum(
        structure, block, atom_scale).coeffs
  construction.spectrum = vilenkinlab.transform.Spectrum(structure, coeffs)
  return construction


def ModulusReport2b(construction, n_range):
  """Compares omega(1/M_n, f)_{H_1/2} with 1/n^2.

  Returns:
    A list of ExperimentRecord with columns omega, bound, ratio.
  """
  records = []
  for n in sorted(n_range):
    if n < 1:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'The 1/n^2 bound needs n >= 1, got %d.' % n)
    omega = vilenkinlab.norms.ModulusOfContinuity(
        construction.spectrum, n, HALF)
    bound = 1.0 / n ** 2
    records.append(vilenkinlab.common.ExperimentRecord(
        'counterexample-2b', [('statistic', 'modulus'), ('p', HALF), ('n', n)],
        [('value', omega), ('bound', bound), ('ratio', omega / bound)]))
  return records


def _LacunaryOrder(construction, k):
  structure = construction.structure
  if k < 1 or k > structure.resolution:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Level %d is outside 1..%d.' % (k, structure.resolution))
  if 2 * structure.M[k] > structure.resolution:
    raise vilenkinlab.errors.CapacityError(
        'q_{M_%d} needs resolution %d, got %d.'
        % (k, 2 * structure.M[k] + 1, structure.resolution),
        required_resolution=2 * structure.M[k] + 1)
  q = vilenkinlab.kernels.QIndex(structure.M[k], structure)
  if q > structure.cells:
    raise vilenkinlab.errors.CapacityError(
        'q_{M_%d} = %d exceeds M_N = %d.' % (k, q, structure.cells),
        required_cells=q)
  return q


def Divergence2b(construction, k):
  """Returns ||sigma_{q_{M_k}} f - f||_{1/2}.

  Raises:
    CapacityError: If q_{M_k} exceeds M_N.
  """
  q = _LacunaryOrder(construction, k)
  return vilenkinlab.norms.LpQuasinorm(
      FejerError(construction.spectrum, q), HALF)


def PartialSumFormula2b(construction, k, j):
  """Evaluates S_j f both directly and by the block formula.

  For M_{2M_k} < j <= q_{M_k} the partial sum is
  S_{M_{2M_k}} f + (M_{2M_k} / M_k^2) psi_{M_{2M_k}} D_{j - M_{2M_k}}.

  Returns:
    A tuple (direct, formula) of StepFunctions.

  Raises:
    VilenkinLabValueError: If k or j is outside the admissible range.
  """
  structure = construction.structure
  _CheckLevel(k, 1, construction.a)
  q = _LacunaryOrder(construction, k)
  start = structure.M[construction.Block(k)]
  if not start < j <= q:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'j = %d is outside (%d, %d].' % (j, start, q))
  direct = vilenkinlab.transform.PartialSum(construction.spectrum, j)
  formula = (vilenkinlab.transform.PartialSum(construction.spectrum, start)
             + construction.BlockValue(k)
             * vilenkinlab.kernels.CharacterFunction(structure, start)
             * vilenkinlab.kernels.DirichletKernel(structure, j - start))
  return direct, formula


def DecomposeFejerError2b(construction, k):
  """Splits sigma_q f - f, q = q_{M_k}, into its four lacunary terms.

  With a = M_{2M_k} and q' = q_{M_k - 1} = q - a:
    sigma_q f - f = a sigma_a f / q + (1/q) sum_{j=a+1}^q S_j f
                    - a f / q - q' f / q,
  and the middle sum equals q' S_a f + (a / M_k^2) psi_a q' K_{q'}.

  Returns:
    A FejerErrorTerms tuple; max_error is the largest cellwise difference
    between the direct and the reconstructed error.
  """
  structure = construction.structure
  _CheckLevel(k, 1, construction.a)
  q = _LacunaryOrder(construction, k)
  a = structure.M[construction.Block(k)]
  q_rest = q - a
  spectrum = construction.spectrum
  f = vilenkinlab.transform.Synthesize(spectrum)

  mean_term = (a / float(q)) * vilenkinlab.transform.FejerMean(spectrum, a)
  partial_sums_term = (
      q_rest * vilenkinlab.transform.PartialSum(spectrum, a)
      + construction.BlockValue(k) * q_rest
      * vilenkinlab.kernels.CharacterFunction(structure, a)
      * vilenkinlab.kernels.FejerKernel(structure, q_rest)) / float(q)
  block_term = -(a / float(q)) * f
  remainder_term = -(q_rest / float(q)) * f
  reconstructed = mean_term + partial_sums_term + block_term + remainder_term
  direct = FejerError(spectrum, q)
  max_error = float(np.abs((direct - reconstructed).values).max())
  return FejerErrorTerms(direct, mean_term, partial_sums_term, block_term,
                         remainder_term, reconstructed, max_error)


def KernelHalfnormScan(a_range, structure):
  """Tabulates the integral of |q_A K_{q_A}|^(1/2) against A.

  Each row also carries the floor implied by the catalogued lower bounds for
  level A + 1, the integral of sqrt(bound) over the catalogued cylinders,
  which are pairwise disjoint.

  Returns:
    A list of ExperimentRecord with columns value, ratio, floor, increasing.

  Raises:
    CapacityError: If 2A + 1 exceeds the resolution, so that q_A > M_N.
  """
  records = []
  previous = None
  for a in sorted(a_range):
    _RequireResolution(structure, 2 * a + 1, 'The kernel scan at A = %d' % a)
    q = vilenkinlab.kernels.QIndex(a, structure)
    modulus = q * vilenkinlab.kernels.FejerKernel(structure, q).Abs()
    value = float(np.mean(np.sqrt(modulus)))
    floor = sum(
        len(cell.cells) / float(structure.cells) * np.sqrt(cell.bound)
        for cell in vilenkinlab.kernels.BoundCells3a(a + 1, structure))
    records.append(vilenkinlab.common.ExperimentRecord(
        'kernel-scan', [('A', a)],
        [('value', value), ('ratio', value / a if a else float('nan')),
         ('floor', float(floor)),
         ('increasing', float('nan') if previous is None
          else float(value > previous))]))
    previous = value
  return records
