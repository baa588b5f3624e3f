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

"""L_p, weak-L_p and martingale Hardy quasinorms; p-atoms.

A martingale is represented by its finest level, a Spectrum at resolution N;
its levels f^(n) are recovered with transform.Condexp.
"""

import collections
import json
import logging

import numpy as np

import vilenkinlab.errors
import vilenkinlab.transform


_logger = logging.getLogger(__name__)

# Relative tolerance of the zero-mean and support checks of an atom.
ATOM_TOLERANCE = 1e-12


def _CheckExponent(p):
  p = float(p)
  if not p > 0:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The exponent p must be positive, got %r.' % p)
  return p


def LpQuasinorm(f, p):
  """Returns ((1/M_N) sum |f|^p)^(1/p).

  Raises:
    VilenkinLabValueError: If p is not positive.
  """
  p = _CheckExponent(p)
  return float(np.mean(f.Abs() ** p) ** (1.0 / p))


def WeakLevels(f):
  """Returns the distinct positive magnitudes v of f with mu(|f| >= v).

  Returns:
    A tuple (magnitudes, measures) of arrays sorted by ascending magnitude.
  """
  magnitudes = np.sort(f.Abs(), kind='stable')
  levels = np.unique(magnitudes[magnitudes > 0])
  at_least = magnitudes.shape[0] - np.searchsorted(magnitudes, levels, 'left')
  return levels, at_least / float(magnitudes.shape[0])


def WeakLpQuasinorm(f, p, powered=False):
  """Returns the weak-L_p quasinorm of f.

  On a step function sup_lambda lambda^p mu(|f| > lambda) is the maximum of
  v^p mu(|f| >= v) over the achieved magnitudes v.

  Args:
    f: A StepFunction.
    p: The positive exponent.
    [optional]
    powered: If True return the p-powered quantity sup lambda^p mu; otherwise
      its 1/p-th root, which is homogeneous and dominated by the L_p norm.

  Raises:
    VilenkinLabValueError: If p is not positive.
  """
  p = _CheckExponent(p)
  levels, measures = WeakLevels(f)
  if not levels.shape[0]:
    return 0.0
  value = float(np.max(levels ** p * measures))
  return value if powered else value ** (1.0 / p)


def HardyNorm(s, p):
  """Returns ||f||_{H_p} = ||f*||_p for the martingale with finest level s.

  Raises:
    VilenkinLabValueError: If p is not positive.
  """
  return LpQuasinorm(vilenkinlab.transform.MaximalFunction(s), p)


def ModulusOfContinuity(s, n, p):
  """Returns omega(1/M_n, f)_{H_p} = ||f - S_{M_n} f||_{H_p}.

  Raises:
    ResolutionError: If n exceeds the resolution.
  """
  structure = s.structure
  if not 0 <= n <= structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'Scale %d is outside 0..%d.' % (n, structure.resolution))
  return HardyNorm(s.Truncated(structure.M[n]), p)


class NormReport(object):
  """The quasinorms of one function for one exponent.

  Attributes:
    p: The exponent.
    lp: The L_p quasinorm.
    weak_lp: The weak-L_p quasinorm in root form.
    weak_lp_powered: The weak-L_p quasinorm in p-powered form.
    hardy: The H_p norm, or None when only values were given.
    levels: The (magnitude, measure) pairs behind the weak norm.
  """

  def __init__(self, function, p, spectrum=None):
    """Computes a NormReport.

    Args:
      function: A StepFunction.
      p: The positive exponent.
      [optional]
      spectrum: The Spectrum of function; when given the H_p norm is added.
    """
    self.p = _CheckExponent(p)
    self.lp = LpQuasinorm(function, p)
    self.weak_lp_powered = WeakLpQuasinorm(function, p, powered=True)
    self.weak_lp = self.weak_lp_powered ** (1.0 / self.p)
    self.hardy = HardyNorm(spectrum, p) if spectrum is not None else None
    magnitudes, measures = WeakLevels(function)
    self.levels = list(zip(magnitudes.tolist(), measures.tolist()))

  def ToDict(self):
    return collections.OrderedDict([
        ('p', self.p), ('lp', self.lp), ('weak_lp', self.weak_lp),
        ('weak_lp_powered', self.weak_lp_powered), ('hardy', self.hardy),
        ('levels', self.levels)])

  def ToJson(self):
    return json.dumps(self.ToDict())


class AtomCertificate(object):
  """The three p-atom conditions checked on one function and interval.

  Attributes:
    point: The base point of the interval.
    depth: The interval is I_depth(point).
    mean_residual: |integral over I of a|.
    zero_mean: Whether the mean residual is within tolerance.
    sup_ratio: ||a||_inf * mu(I)^(1/p); at most 1 for an atom.
    sup_bound: Whether sup_ratio is at most 1.
    outside_sup: The largest |a| outside I.
    support: Whether a vanishes outside I.
  """

  def __init__(self, point, depth, mean_residual, zero_mean, sup_ratio,
               sup_bound, outside_sup, support):
    self.point = point
    self.depth = depth
    self.mean_residual = mean_residual
    self.zero_mean = zero_mean
    self.sup_ratio = sup_ratio
    self.sup_bound = sup_bound
    self.outside_sup = outside_sup
    self.support = support

  @property
  def valid(self):
    return self.zero_mean and self.sup_bound and self.support

  def __repr__(self):
    return ('AtomCertificate(depth=%d, zero_mean=%s, sup_bound=%s, '
            'support=%s, sup_ratio=%r)' % (self.depth, self.zero_mean,
                                           self.sup_bound, self.support,
                                           self.sup_ratio))


def ValidateAtom(a, p, point, depth):
  """Checks whether a is a p-atom supported on I_depth(point).

  Failures are recorded on the certificate rather than raised.

  Args:
    a: A StepFunction.
    p: The positive exponent.
    point: A GroupPoint.
    depth: The depth of the interval, at most N.

  Returns:
    An AtomCertificate.

  Raises:
    ResolutionError: If depth exceeds the resolution.
  """
  p = _CheckExponent(p)
  structure = a.structure
  cells = structure.CylinderCells(point, depth)
  magnitudes = a.Abs()
  sup = float(magnitudes.max())
  tolerance = ATOM_TOLERANCE * sup

  mean_residual = abs(a.values[cells.start:cells.stop].sum()) / structure.cells
  outside = np.concatenate(
      [magnitudes[:cells.start], magnitudes[cells.stop:]])
  outside_sup = float(outside.max()) if outside.shape[0] else 0.0
  sup_ratio = sup * structure.CylinderMeasure(depth) ** (1.0 / p)

  return AtomCertificate(
      point=point, depth=depth, mean_residual=float(mean_residual),
      zero_mean=mean_residual <= tolerance, sup_ratio=sup_ratio,
      sup_bound=sup_ratio <= 1.0 + ATOM_TOLERANCE, outside_sup=outside_sup,
      support=outside_sup <= tolerance)


class AtomicDecomposition(object):
  """A finite family of p-atoms with real coefficients.

  Attributes:
    structure: The VilenkinStructure shared by the atoms.
    coefficients: A list of the real coefficients mu_k.
    atoms: A list of StepFunction atoms a_k.
    intervals: A list of (point, depth) supports, or None when unknown.
    p: The exponent.
  """

  def __init__(self, structure, coefficients, atoms, p, intervals=None):
    """Initializes an AtomicDecomposition.

    Raises:
      VilenkinLabValueError: If the lists differ in length or an atom lives on
        another structure.
    """
    coefficients = [float(c) for c in coefficients]
    atoms = list(atoms)
    if len(coefficients) != len(atoms) or (
        intervals is not None and len(intervals) != len(atoms)):
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Got %d coefficients for %d atoms.' % (len(coefficients), len(atoms)))
    for atom in atoms:
      if atom.structure != structure:
        raise vilenkinlab.errors.VilenkinLabValueError(
            'Atom on %r does not belong to %r.' % (atom.structure, structure))
    self.structure = structure
    self.coefficients = coefficients
    self.atoms = atoms
    self.intervals = list(intervals) if intervals is not None else None
    self.p = _CheckExponent(p)

  def CoefficientBound(self):
    """Returns (sum |mu_k|^p)^(1/p), the upper estimate of ||f||_{H_p}."""
    if not self.coefficients:
      return 0.0
    return float(
        np.sum(np.abs(self.coefficients) ** self.p) ** (1.0 / self.p))

  def Certificates(self):
    if self.intervals is None:
      return []
    return [ValidateAtom(atom, self.p, point, depth)
            for atom, (point, depth) in zip(self.atoms, self.intervals)]


AssemblyResult = collections.namedtuple(
    'AssemblyResult', ['function', 'coefficient_bound', 'invalid_atoms'])


def AssembleFromAtoms(decomposition, n):
  """Returns f_n = sum_k mu_k S_{M_n} a_k and the coefficient estimate.

  Args:
    decomposition: An AtomicDecomposition.
    n: The martingale level, at most N.

  Returns:
    An AssemblyResult; invalid_atoms lists the indices of atoms whose
    certificate failed.

  Raises:
    ResolutionError: If n exceeds the resolution.
  """
  structure = decomposition.structure
  if not 0 <= n <= structure.resolution:
    raise vilenkinlab.errors.ResolutionError(
        'Level %d is outside 0..%d.' % (n, structure.resolution))
  invalid = []
  for index, certificate in enumerate(decomposition.Certificates()):
    if not certificate.valid:
      _logger.warning('Atom %d is not a %r-atom: %r', index,
                      decomposition.p, certificate)
      invalid.append(index)

  total = np.zeros(structure.cells, dtype=complex)
  for coefficient, atom in zip(decomposition.coefficients,
                               decomposition.atoms):
    total += coefficient * vilenkinlab.transform.BlockAverage(atom, n).values
  return AssemblyResult(
      function=vilenkinlab.transform.StepFunction(structure, total),
      coefficient_bound=decomposition.CoefficientBound(),
      invalid_atoms=invalid)
