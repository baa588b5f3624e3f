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

"""Experiment runners, table writers and the acceptance check suite."""

import collections
import csv
import json
import logging
import math
import os
import sys
import time

import numpy as np

import vilenkinlab.common
import vilenkinlab.counterexamples
import vilenkinlab.errors
import vilenkinlab.group
import vilenkinlab.kernels
import vilenkinlab.norms
import vilenkinlab.transform
import vilenkinlab.util


_logger = logging.getLogger(__name__)

_THRESHOLDS_PATH = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), 'data', 'thresholds.json')

# The largest structure whose full Gram matrix is formed.
GRAM_CELLS_LIMIT = 4096

CONVERGENCE_FAMILIES = ('smoothed-indicator', 'character-polynomial',
                        'construction-2a', 'constant')

# One assertion-grade comparison of a measured statistic with a threshold.
CheckResult = collections.namedtuple(
    'CheckResult', ['name', 'statistic', 'threshold', 'passed'])

ExperimentResult = collections.namedtuple(
    'ExperimentResult', ['records', 'checks'])


def LoadThresholds(path=None):
  """Loads the frozen acceptance thresholds.

  Args:
    [optional]
    path: A JSON file; defaults to the thresholds shipped with the package.

  Returns:
    A dict of threshold names to values.

  Raises:
    VilenkinLabValueError: If the file cannot be read or parsed.
  """
  path = path or _THRESHOLDS_PATH
  try:
    with open(path) as handle:
      return json.load(handle)
  except (IOError, ValueError) as e:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Thresholds file %s could not be loaded: %s' % (path, e))


def AtMost(name, statistic, threshold):
  return _Compare(name, statistic, threshold, statistic <= threshold)


def AtLeast(name, statistic, threshold):
  return _Compare(name, statistic, threshold, statistic >= threshold)


def _Compare(name, statistic, threshold, passed):
  statistic = float(statistic)
  passed = bool(passed) and not math.isnan(statistic)
  if not passed:
    _logger.warning('Check %s failed: %r against %r.', name, statistic,
                    threshold)
  return CheckResult(name, statistic, float(threshold), passed)


def _Record(experiment, keys, values):
  return vilenkinlab.common.ExperimentRecord(experiment, keys, values)


def LogGrid(upper, points):
  """Returns about `points` distinct integers log-spaced over [1, upper]."""
  grid = np.unique(np.round(np.geomspace(1, upper, max(points, 2))))
  return [int(n) for n in grid]


def RandomFunction(structure, generator):
  """Returns a StepFunction with values (2u - 1) + i(2v - 1)."""
  return vilenkinlab.transform.StepFunction(
      structure, generator.ComplexArray(structure.cells))


def RandomAtomLike(structure, generator, depth):
  """Returns a zero-mean random function supported on I_depth(0)."""
  width = structure.cells // structure.M[depth]
  values = generator.ComplexArray(width)
  values -= values.mean()
  data = np.zeros(structure.cells, dtype=complex)
  data[:width] = values
  return vilenkinlab.transform.StepFunction(structure, data)


def RelativeError(actual, expected):
  actual = np.asarray(actual)
  expected = np.asarray(expected)
  scale = max(float(np.abs(expected).max()), 1e-300)
  return float(np.abs(actual - expected).max()) / scale


def GramError(structure):
  """Returns max |G - I| of the character Gram matrix.

  Raises:
    CapacityError: If M_N exceeds GRAM_CELLS_LIMIT.
  """
  if structure.cells > GRAM_CELLS_LIMIT:
    raise vilenkinlab.errors.CapacityError(
        'The Gram matrix of %d characters exceeds the limit %d.'
        % (structure.cells, GRAM_CELLS_LIMIT), required_cells=structure.cells)
  gram = vilenkinlab.transform.GramMatrix(structure)
  return float(np.abs(gram - np.eye(structure.cells)).max())


def ParsevalError(f):
  """Returns | ||f||_2^2 - sum |f^(j)|^2 | relative to the coefficient sum."""
  energy = float(np.mean(f.Abs() ** 2))
  coefficients = float(np.sum(np.abs(
      vilenkinlab.transform.Analyze(f).coeffs) ** 2))
  return abs(energy - coefficients) / max(coefficients, 1e-300)


def DirichletClosedFormError(structure, j):
  """Returns max |D_{M_j} - M_j 1_{I_j}|."""
  expected = np.zeros(structure.cells)
  cells = structure.CylinderCells(structure.Zero(), j)
  expected[cells.start:cells.stop] = structure.M[j]
  kernel = vilenkinlab.kernels.DirichletKernel(structure, structure.M[j])
  return float(np.abs(kernel.values - expected).max())


def RunGram(config):
  """Checks orthonormality of the characters and Parseval's identity.

  Parameters:
    random_functions: The number of seeded random functions, default 100.
  """
  structure = config.structure
  thresholds = LoadThresholds()
  count = int(config.parameters.get('random_functions', 100))
  records = []
  checks = []

  gram_error = GramError(structure)
  records.append(_Record('gram', [('statistic', 'gram'), ('sample', 0)],
                         [('value', gram_error)]))
  checks.append(AtMost('gram', gram_error, thresholds['gram_max_error']))

  generator = vilenkinlab.util.XorShift64Star(config.seed)
  worst = 0.0
  for sample in range(count):
    error = ParsevalError(RandomFunction(structure, generator))
    worst = max(worst, error)
    records.append(_Record('gram', [('statistic', 'parseval'),
                                    ('sample', sample)],
                           [('value', error)]))
  checks.append(AtMost('parseval', worst,
                       thresholds['parseval_relative_error']))
  return ExperimentResult(records, checks)


def _FeasibleKernelLevels(structure):
  return list(range(3, (structure.resolution + 1) // 2 + 1))


def RunKernels(config):
  """Checks the Dirichlet closed form, kernel integrals and the lower bound.

  Parameters:
    a_values: Levels A of the lower-bound catalogue; defaults to every A >= 3
      with 2A - 1 <= N.
    points: The number of log-spaced kernel orders, default 16.
  """
  structure = config.structure
  thresholds = LoadThresholds()
  records = []
  checks = []

  worst = 0.0
  for j in range(structure.resolution + 1):
    error = DirichletClosedFormError(structure, j)
    worst = max(worst, error)
    records.append(_Record('kernels', [('statistic', 'dirichlet-closed-form'),
                                       ('n', structure.M[j])],
                           [('value', error)]))
  checks.append(AtMost('dirichlet-closed-form', worst,
                       thresholds['dirichlet_closed_form_error']))

  for n in LogGrid(structure.cells, int(config.parameters.get('points', 16))):
    dirichlet = vilenkinlab.kernels.DirichletKernel(structure, n)
    fejer = vilenkinlab.kernels.FejerKernel(structure, n)
    records.append(_Record(
        'kernels', [('statistic', 'kernel-integrals'), ('n', n)],
        [('value', dirichlet.Integral().real),
         ('fejer_integral', fejer.Integral().real),
         ('dirichlet_at_zero', dirichlet.values[0].real),
         ('fejer_at_zero', fejer.values[0].real)]))

  a_values = config.parameters.get('a_values',
                                   _FeasibleKernelLevels(structure))
  for a in a_values:
    results = vilenkinlab.kernels.CheckBound3a(int(a), structure)
    for result in results:
      cell = result.cell
      records.append(_Record(
          'kernels', [('statistic', 'bound-3a'), ('n', int(a)), ('k', cell.k),
                      ('s', cell.s), ('digit_low', cell.digit_low),
                      ('digit_high', cell.digit_high)],
          [('value', result.minimum), ('bound', cell.bound)]))
    failed = sum(1 for result in results if not result.passed)
    checks.append(AtMost('bound-3a[A=%d]' % int(a), failed, 0))
  return ExperimentResult(records, checks)


def ConvergenceSpectrum(family, structure, parameters, generator):
  """Builds the spectrum of a named test function.

  Args:
    family: One of CONVERGENCE_FAMILIES.
    structure: The VilenkinStructure.
    parameters: The experiment parameters; "depth" and "smoothing" shape the
      smoothed indicator, "support" the character polynomial, "A" and
      "decay" the construction.
    generator: The XorShift64Star drawing random coefficients.

  Returns:
    A Spectrum.

  Raises:
    VilenkinLabValueError: If the family is unknown.
  """
  resolution = structure.resolution
  if family == 'smoothed-indicator':
    depth = int(parameters.get('depth', min(3, resolution)))
    smoothing = int(parameters.get('smoothing', min(2, resolution)))
    coeffs = np.zeros(structure.cells)
    coeffs[:structure.M[depth]] = 1.0 / structure.M[depth]
    coeffs *= vilenkinlab.transform.FejerWeights(
        structure, structure.M[smoothing])
    return vilenkinlab.transform.Spectrum(structure, coeffs)
  elif family == 'character-polynomial':
    width = structure.M[int(parameters.get('support', min(2, resolution)))]
    coeffs = np.zeros(structure.cells, dtype=complex)
    coeffs[0] = 1.0
    coeffs[1:width] = generator.ComplexArray(width - 1) / (2.0 * width)
    return vilenkinlab.transform.Spectrum(structure, coeffs)
  elif family == 'construction-2a':
    return vilenkinlab.counterexamples.Spectrum2a(
        int(parameters.get('A', resolution - 1)), structure,
        float(parameters.get('decay', 1.0)))
  elif family == 'constant':
    coeffs = np.zeros(structure.cells, dtype=complex)
    coeffs[0] = complex(parameters.get('value', 1.0))
    return vilenkinlab.transform.Spectrum(structure, coeffs)
  raise vilenkinlab.errors.VilenkinLabValueError(
      'Unknown test function family "%s". Supported families: %s'
      % (family, CONVERGENCE_FAMILIES))


def DyadicFejerErrors(spectrum, p):
  """Returns [||sigma_{M_k} f - f||_p for k = 0..N]."""
  return [vilenkinlab.counterexamples.FejerDecay(spectrum, k, p)
          for k in range(spectrum.structure.resolution + 1)]


def DecayChecks(name, errors, norm, start, thresholds):
  """Checks the decay of ||sigma_{M_k} f - f||_p from level `start` on.

  The last error must be a small fraction of ||f||_p and every error from
  `start` on must stay within a fixed factor of its running minimum.
  """
  fraction = thresholds['fejer_decay_fraction']
  factor = thresholds['fejer_running_min_factor']
  tail = errors[start:]
  worst = 0.0
  running = float('inf')
  for error in tail:
    running = min(running, error)
    if running > 0:
      worst = max(worst, error / running)
  last = errors[-1] / norm if norm else 0.0
  return [AtMost('%s-decay' % name, last, fraction),
          AtMost('%s-running-min' % name, worst, factor)]


def RunConvergence(config):
  """Sweeps ||sigma_n f - f||_p over a log-spaced grid of n.

  Each row also carries omega(1/M_{|n|}, f)_{H_p}, the bound
  weight_p(n) * omega when p <= 1/2 and the three quasi-triangle terms
  ||sigma_n(f - S_{M_{|n|}} f)||_p^p, ||S_{M_{|n|}} f - f||_p^p and
  ||sigma_n S_{M_{|n|}} f - S_{M_{|n|}} f||_p^p.

  Parameters:
    family: One of CONVERGENCE_FAMILIES, default "smoothed-indicator".
    points: The number of grid points, default 24.
  """
  structure = config.structure
  thresholds = LoadThresholds()
  family = config.parameters.get('family', 'smoothed-indicator')
  points = int(config.parameters.get('points', 24))
  generator = vilenkinlab.util.XorShift64Star(config.seed)
  spectrum = ConvergenceSpectrum(family, structure, config.parameters,
                                 generator)
  f = vilenkinlab.transform.Synthesize(spectrum)
  records = []
  checks = []

  for p in config.p_values:
    norm = vilenkinlab.norms.LpQuasinorm(f, p)
    weight = (vilenkinlab.transform.MaximalWeight(p) if p <= 0.5 else None)
    worst_split = 0.0
    for n in LogGrid(structure.cells, points):
      level = (structure.LeadingPosition(n) if n < structure.cells
               else structure.resolution)
      error = vilenkinlab.norms.LpQuasinorm(
          vilenkinlab.transform.FejerMean(spectrum, n) - f, p)
      omega = vilenkinlab.norms.ModulusOfContinuity(spectrum, level, p)
      low = spectrum.Truncated(0, structure.M[level])
      partial = vilenkinlab.transform.Synthesize(low)
      terms = [
          vilenkinlab.norms.LpQuasinorm(vilenkinlab.transform.FejerMean(
              spectrum.Truncated(structure.M[level]), n), p) ** p,
          vilenkinlab.norms.LpQuasinorm(partial - f, p) ** p,
          vilenkinlab.norms.LpQuasinorm(
              vilenkinlab.transform.FejerMean(low, n) - partial, p) ** p,
      ]
      split = sum(terms)
      if split > 0:
        worst_split = max(worst_split, error ** p / split)
      records.append(_Record(
          'convergence', [('statistic', 'fejer-error'), ('p', p), ('n', n)],
          [('value', error),
           ('relative', error / norm if norm else float('nan')),
           ('modulus', omega),
           ('bound', weight.Value(n) * omega if weight else float('nan')),
           ('tail_term', terms[0]), ('partial_term', terms[1]),
           ('polynomial_term', terms[2])]))
    checks.append(AtMost('convergence-split[p=%g]' % p, worst_split,
                         1.0 + 1e-9))

    errors = DyadicFejerErrors(spectrum, p)
    for k, error in enumerate(errors):
      records.append(_Record(
          'convergence', [('statistic', 'dyadic-fejer-error'), ('p', p),
                          ('n', structure.M[k])],
          [('value', error),
           ('relative', error / norm if norm else float('nan'))]))
    if family != 'construction-2a':
      checks.extend(DecayChecks('%s[p=%g]' % (family, p), errors, norm,
                                min(2, structure.resolution), thresholds))
  return ExperimentResult(records, checks)


def _Levels(parameters, key, default):
  return [int(value) for value in parameters.get(key, default)]


def CoefficientLawError(construction):
  """Returns the relative gap between the built and closed-form spectra."""
  return RelativeError(construction.spectrum.coeffs,
                       construction.ClosedFormSpectrum().coeffs)


def _AtomRecords(experiment, construction, first):
  records = []
  invalid = 0
  for offset, certificate in enumerate(
      construction.Decomposition().Certificates()):
    invalid += 0 if certificate.valid else 1
    records.append(_Record(
        experiment, [('statistic', 'atom'), ('p', construction.p),
                     ('n', first + offset)],
        [('value', certificate.sup_ratio), ('bound', 1.0),
         ('ratio', certificate.mean_residual)]))
  return records, invalid


def MartingaleDifferenceError(construction, decomposition, n):
  """Compares f^(n) with the atoms assembled at level n, relatively."""
  level = vilenkinlab.transform.Condexp(construction.spectrum, n)
  assembled = vilenkinlab.norms.AssembleFromAtoms(decomposition, n).function
  if not level.SupNorm():
    return assembled.SupNorm()
  return RelativeError(assembled.values, level.values)


def RunCounterexample2a(config):
  """Builds the 0 < p < 1/2 martingale and measures its statistics.

  Parameters:
    A: The truncation level, default N - 1.
    modulus_levels: Scales n of the modulus report, default 1..A-2.
    divergence_levels: Levels k of the divergence statistic, default 3..A-2.
  """
  structure = config.structure
  thresholds = LoadThresholds()
  parameters = config.parameters
  a = int(parameters.get('A', structure.resolution - 1))
  modulus_levels = _Levels(parameters, 'modulus_levels', range(1, a - 1))
  divergence_levels = _Levels(parameters, 'divergence_levels',
                              range(min(3, max(a - 2, 0)), a - 1))
  modulus_threshold = thresholds['modulus_ratio_2a']
  tolerance = thresholds['reconstruction_error']
  records = []
  checks = []

  for p in config.p_values:
    construction = vilenkinlab.counterexamples.Build2a(p, a, structure)
    tag = 'p=%g' % p
    law = CoefficientLawError(construction)
    records.append(_Record(
        'counterexample-2a', [('statistic', 'coefficient-law'), ('p', p),
                              ('n', a)],
        [('value', law), ('bound', thresholds['coefficient_law_error'])]))
    checks.append(AtMost('coefficient-law-2a[%s]' % tag, law,
                         thresholds['coefficient_law_error']))

    atom_records, invalid = _AtomRecords('counterexample-2a', construction, 0)
    records.extend(atom_records)
    checks.append(AtMost('atoms-2a[%s]' % tag, invalid, 0))

    worst = 0.0
    decomposition = construction.Decomposition()
    for n in range(a + 2):
      error = MartingaleDifferenceError(construction, decomposition, n)
      worst = max(worst, error)
      records.append(_Record(
          'counterexample-2a', [('statistic', 'martingale-difference'),
                                ('p', p), ('n', n)],
          [('value', error), ('bound', tolerance)]))
    checks.append(AtMost('martingale-difference-2a[%s]' % tag, worst,
                         tolerance))

    report = vilenkinlab.counterexamples.ModulusReport2a(construction,
                                                         modulus_levels)
    records.extend(report)
    if p == modulus_threshold['p']:
      ratios = [row.values['ratio'] for row in report
                if row.keys['n'] >= modulus_threshold['min_n']]
      if ratios:
        checks.append(AtMost('modulus-2a[%s]' % tag, max(ratios),
                             modulus_threshold['max_ratio']))

    weakest = float('inf')
    worst_residual = 0.0
    for k in divergence_levels:
      value = vilenkinlab.counterexamples.Divergence2a(construction, k)
      residual = vilenkinlab.counterexamples.DominantTermResidual2a(
          construction, k)
      weakest = min(weakest, value)
      worst_residual = max(worst_residual, residual)
      records.append(_Record(
          'counterexample-2a', [('statistic', 'divergence'), ('p', p),
                                ('n', k)],
          [('value', value), ('bound', thresholds['divergence_2a']),
           ('ratio', value / thresholds['divergence_2a'])]))
      records.append(_Record(
          'counterexample-2a', [('statistic', 'dominant-term'), ('p', p),
                                ('n', k)],
          [('value', residual), ('bound', tolerance)]))
    if divergence_levels:
      checks.append(AtLeast('divergence-2a[%s]' % tag, weakest,
                            thresholds['divergence_2a']))
      checks.append(AtMost('dominant-term-2a[%s]' % tag, worst_residual,
                           tolerance))

    for k in range(structure.resolution + 1):
      records.append(_Record(
          'counterexample-2a', [('statistic', 'fejer-decay'), ('p', p),
                                ('n', k)],
          [('value', vilenkinlab.counterexamples.FejerDecay(
              construction.spectrum, k, p))]))
  return ExperimentResult(records, checks)


def _DefaultLevel2b(structure):
  a = 1
  while (a + 1 <= structure.resolution and
         2 * structure.M[a + 1] + 1 <= structure.resolution):
    a += 1
  return a


def PartialSumFormulaError(construction, k):
  """Returns the worst relative error of the block formula at sampled j."""
  structure = construction.structure
  start = structure.M[construction.Block(k)]
  q = vilenkinlab.kernels.QIndex(structure.M[k], structure)
  worst = 0.0
  for j in sorted({start + 1, (start + q + 1) // 2, q}):
    direct, formula = vilenkinlab.counterexamples.PartialSumFormula2b(
        construction, k, j)
    worst = max(worst, float(np.abs((direct - formula).values).max())
                / max(1.0, direct.SupNorm()))
  return worst


def RunCounterexample2b(config):
  """Builds the p = 1/2 martingale and measures its statistics.

  Parameters:
    A: The truncation level; defaults to the largest A with 2 M_A + 1 <= N.
    modulus_levels: Scales n of the modulus report, default 1..min(N, 2 M_A).
    divergence_levels: Levels k of the divergence statistic, default 1..A.
  """
  structure = config.structure
  thresholds = LoadThresholds()
  parameters = config.parameters
  a = int(parameters.get('A', _DefaultLevel2b(structure)))
  construction = vilenkinlab.counterexamples.Build2b(a, structure)
  p = construction.p
  modulus_levels = _Levels(
      parameters, 'modulus_levels',
      range(1, min(structure.resolution, 2 * structure.M[a]) + 1))
  divergence_levels = _Levels(parameters, 'divergence_levels',
                              range(1, a + 1))
  modulus_threshold = thresholds['modulus_ratio_2b']
  tolerance = thresholds['reconstruction_error']
  records = []
  checks = []

  law = CoefficientLawError(construction)
  records.append(_Record(
      'counterexample-2b', [('statistic', 'coefficient-law'), ('p', p),
                            ('n', a)],
      [('value', law), ('bound', thresholds['coefficient_law_error'])]))
  checks.append(AtMost('coefficient-law-2b', law,
                       thresholds['coefficient_law_error']))

  atom_records, invalid = _AtomRecords('counterexample-2b', construction, 1)
  records.extend(atom_records)
  checks.append(AtMost('atoms-2b', invalid, 0))

  report = vilenkinlab.counterexamples.ModulusReport2b(construction,
                                                       modulus_levels)
  records.extend(report)
  ratios = [row.values['ratio'] for row in report
            if row.keys['n'] >= modulus_threshold['min_n']]
  if ratios:
    checks.append(AtMost('modulus-2b', max(ratios),
                         modulus_threshold['max_ratio']))

  weakest = float('inf')
  worst_formula = 0.0
  worst_split = 0.0
  for k in divergence_levels:
    value = vilenkinlab.counterexamples.Divergence2b(construction, k)
    weakest = min(weakest, value)
    records.append(_Record(
        'counterexample-2b', [('statistic', 'divergence'), ('p', p),
                              ('n', k)],
        [('value', value), ('bound', thresholds['divergence_2b']),
         ('ratio', value / thresholds['divergence_2b'])]))
    if k <= a:
      formula = PartialSumFormulaError(construction, k)
      terms = vilenkinlab.counterexamples.DecomposeFejerError2b(
          construction, k)
      split = terms.max_error / max(1.0, vilenkinlab.transform.Synthesize(
          construction.spectrum).SupNorm())
      worst_formula = max(worst_formula, formula)
      worst_split = max(worst_split, split)
      records.append(_Record(
          'counterexample-2b', [('statistic', 'partial-sum-formula'),
                                ('p', p), ('n', k)],
          [('value', formula), ('bound', tolerance)]))
      records.append(_Record(
          'counterexample-2b', [('statistic', 'fejer-error-split'),
                                ('p', p), ('n', k)],
          [('value', split), ('bound', tolerance)]))
  if divergence_levels:
    checks.append(AtLeast('divergence-2b', weakest,
                          thresholds['divergence_2b']))
    checks.append(AtMost('partial-sum-formula-2b', worst_formula, tolerance))
    checks.append(AtMost('fejer-error-split-2b', worst_split, tolerance))
  return ExperimentResult(records, checks)


def RunKernelScan(config):
  """Tabulates the integral of |q_A K_{q_A}|^(1/2) against A.

  Parameters:
    a_values: The levels A, default every A >= 1 with 2A + 1 <= N.
  """
  structure = config.structure
  thresholds = LoadThresholds()['kernel_scan_ratio']
  a_values = _Levels(config.parameters, 'a_values',
                     range(1, (structure.resolution - 1) // 2 + 1))
  records = vilenkinlab.counterexamples.KernelHalfnormScan(a_values,
                                                           structure)
  checks = []
  ratios = [row.values['ratio'] for row in records
            if row.keys['A'] >= thresholds['min_a']]
  if ratios:
    checks.append(AtLeast('kernel-scan', min(ratios),
                          thresholds['min_ratio']))
  floors = [row.values['value'] - row.values['floor'] for row in records]
  if floors:
    checks.append(AtLeast('kernel-scan-floor', min(floors), 0.0))
  return ExperimentResult(records, checks)


def MaximalSamples(structure, p, parameters, generator):
  """Returns the named sample spectra of the maximal-bound experiment.

  The family holds the atoms a_0, a_1, ... of the 0 < p < 1/2 construction
  (scaled for p), zero-mean random functions supported on I_depth and, for
  p < 1/2, the truncated construction itself.
  """
  samples = []
  for k in range(min(int(parameters.get('atoms', 3)), structure.resolution)):
    samples.append(('atom-%d' % k, vilenkinlab.counterexamples.AtomSpectrum2a(
        k, p, structure)))
  depth = min(int(parameters.get('support_depth', 2)), structure.resolution)
  for index in range(int(parameters.get('random_functions', 4))):
    samples.append(('random-%d' % index, vilenkinlab.transform.Analyze(
        RandomAtomLike(structure, generator, depth))))
  if p < 0.5 and parameters.get('construction', True):
    a = int(parameters.get('A', structure.resolution - 1))
    samples.append(('construction-2a',
                    vilenkinlab.counterexamples.Build2a(p, a,
                                                        structure).spectrum))
  return samples


def MaximalRatios(spectrum, p, n_max):
  """Yields (n, ||sigma_n f||_p, weight, ratio) for n = 1..n_max."""
  weight = vilenkinlab.transform.MaximalWeight(p)
  hardy = vilenkinlab.norms.HardyNorm(spectrum, p)
  for n, values in vilenkinlab.transform.FejerMeanSequence(spectrum, n_max):
    norm = vilenkinlab.norms.LpQuasinorm(
        vilenkinlab.transform.StepFunction(spectrum.structure, values), p)
    value = weight.Value(n)
    yield n, norm, value, (norm / (value * hardy) if hardy else 0.0)


def MaximalRatioMaxima(structure, p, parameters, seed, n_max):
  """Returns {sample name: max_n ratio} over the sample family."""
  generator = vilenkinlab.util.XorShift64Star(seed)
  return collections.OrderedDict(
      (name, max(ratio for _, _, _, ratio in MaximalRatios(spectrum, p,
                                                           n_max)))
      for name, spectrum in MaximalSamples(structure, p, parameters,
                                           generator))


def RunMaximalBound(config):
  """Measures ||sigma_n f||_p / (weight_p(n) ||f||_{H_p}) over samples.

  Parameters:
    n_max: The largest order, default M_N.
    points: The number of log-spaced rows per sample, default 24.
    atoms, support_depth, random_functions, construction, A: see
      MaximalSamples.
  """
  structure = config.structure
  n_max = int(config.parameters.get('n_max', structure.cells))
  grid = set(LogGrid(n_max, int(config.parameters.get('points', 24))))
  records = []
  checks = []
  for p in config.p_values:
    generator = vilenkinlab.util.XorShift64Star(config.seed)
    worst = 0.0
    for name, spectrum in MaximalSamples(structure, p, config.parameters,
                                         generator):
      running = 0.0
      for n, norm, weight, ratio in MaximalRatios(spectrum, p, n_max):
        running = max(running, ratio)
        if n in grid:
          records.append(_Record(
              'maximal-bound', [('p', p), ('sample', name), ('n', n)],
              [('value', norm), ('weight', weight), ('ratio', ratio),
               ('running_max', running)]))
      worst = max(worst, running)
    checks.append(_Compare('maximal-bound-finite[p=%g]' % p, worst,
                           float('inf'), math.isfinite(worst)))
  return ExperimentResult(records, checks)


_RUNNERS = {
    'gram': RunGram,
    'kernels': RunKernels,
    'convergence': RunConvergence,
    'counterexample-2a': RunCounterexample2a,
    'counterexample-2b': RunCounterexample2b,
    'kernel-scan': RunKernelScan,
    'maximal-bound': RunMaximalBound,
}


def Run(config):
  """Runs the configured experiment.

  Args:
    config: An ExperimentConfig.

  Returns:
    An ExperimentResult whose records carry the config hash and are sorted by
    their index columns.
  """
  config_hash = config.Hash()
  _logger.info('Running %s on %r (config %s).', config.experiment,
               config.structure, config_hash)
  result = _RUNNERS[config.experiment](config)
  records = sorted((record.WithConfig(config_hash)
                    for record in result.records),
                   key=lambda record: record.SortKey())
  _logger.info('Experiment %s produced %d rows and %d checks.',
               config.experiment, len(records), len(result.checks))
  return ExperimentResult(records, list(result.checks))


def _Columns(records, attribute):
  columns = collections.OrderedDict()
  for record in records:
    for name in getattr(record, attribute):
      columns[name] = None
  return list(columns)


def _FormatCell(value):
  if isinstance(value, float):
    return vilenkinlab.util.FormatFloat(value)
  return str(value)


def WriteCsv(records, config_hash, handle):
  """Writes records as CSV with a schema and config header line."""
  handle.write('# schema=%d, config=%s\n'
               % (vilenkinlab.common.SCHEMA_VERSION, config_hash))
  keys = _Columns(records, 'keys')
  values = _Columns(records, 'values')
  writer = csv.writer(handle, delimiter=',', lineterminator='\n')
  writer.writerow(['experiment'] + keys + values + ['config'])
  for record in records:
    row = [record.experiment]
    row.extend(_FormatCell(record.keys[name]) if name in record.keys else ''
               for name in keys)
    row.extend(_FormatCell(record.values[name]) if name in record.values
               else '' for name in values)
    row.append(record.config_hash)
    writer.writerow(row)


def _JsonValue(value):
  if isinstance(value, float) and not math.isfinite(value):
    return None
  return value


def WriteJson(records, config_hash, handle):
  """Writes {"schema", "config", "rows"} with one object per record."""
  rows = [collections.OrderedDict(
      (name, _JsonValue(value)) for name, value in record.ToDict().items())
          for record in records]
  json.dump(collections.OrderedDict([
      ('schema', vilenkinlab.common.SCHEMA_VERSION), ('config', config_hash),
      ('rows', rows)]), handle, sort_keys=False, indent=1)
  handle.write('\n')


_WRITERS = {'csv': WriteCsv, 'json': WriteJson}


def Emit(config, result, stream=None):
  """Writes the records to the configured path, or to stream if none."""
  writer = _WRITERS[config.output['format']]
  path = config.output.get('path')
  if path:
    with open(path, 'w', newline='') as handle:
      writer(result.records, config.Hash(), handle)
    _logger.info('Wrote %d rows to %s.', len(result.records), path)
  else:
    writer(result.records, config.Hash(), stream or sys.stdout)


# Settings shared by every acceptance check.
CheckOptions = collections.namedtuple(
    'CheckOptions', ['cells_cap', 'seed', 'speedup'])


def _Dyadic(resolution, options):
  structure = vilenkinlab.group.VilenkinStructure.Dyadic(resolution)
  structure.CheckCapacity(options.cells_cap)
  return structure


def _SmallStructures(options):
  mixed = vilenkinlab.group.VilenkinStructure([2, 3, 2, 3])
  mixed.CheckCapacity(options.cells_cap)
  return [mixed, _Dyadic(10, options)]


def CheckOrthonormality(thresholds, options):
  results = []
  for structure in _SmallStructures(options):
    generator = vilenkinlab.util.XorShift64Star(options.seed)
    parseval = max(ParsevalError(RandomFunction(structure, generator))
                   for _ in range(100))
    results.append(AtMost('gram[M=%d]' % structure.cells,
                          GramError(structure),
                          thresholds['gram_max_error']))
    results.append(AtMost('parseval[M=%d]' % structure.cells, parseval,
                          thresholds['parseval_relative_error']))
  return results


def CheckDirichletClosedForm(thresholds, options):
  return [AtMost('dirichlet-closed-form[M=%d]' % structure.cells,
                 max(DirichletClosedFormError(structure, j)
                     for j in range(structure.resolution + 1)),
                 thresholds['dirichlet_closed_form_error'])
          for structure in _SmallStructures(options)]


def CheckKernelBound(thresholds, options):
  results = []
  for a in range(3, 7):
    checks = vilenkinlab.kernels.CheckBound3a(a, _Dyadic(2 * a - 1, options))
    results.append(AtMost('bound-3a[A=%d]' % a,
                          sum(1 for check in checks if not check.passed), 0))
  return results


def MeasureSpeedup(structure, generator, samples=64):
  """Times the fast transform against the naive sum, extrapolated.

  The naive cost is measured on `samples` evenly spaced coefficients and
  scaled to all M_N of them.

  Returns:
    A tuple (speedup, relative error of the sampled coefficients).
  """
  f = RandomFunction(structure, generator)
  fast_seconds = float('inf')
  for _ in range(3):
    start = time.perf_counter()
    spectrum = vilenkinlab.transform.Analyze(f)
    fast_seconds = min(fast_seconds, time.perf_counter() - start)
  indices = list(range(0, structure.cells, max(structure.cells // samples, 1)))
  start = time.perf_counter()
  naive = vilenkinlab.transform.AnalyzeNaive(f, indices)
  naive_seconds = ((time.perf_counter() - start) * structure.cells
                   / float(len(indices)))
  speedup = naive_seconds / max(fast_seconds, 1e-9)
  _logger.info('Fast transform of %d cells: %.6f s, naive estimate %.3f s, '
               'speedup %.1f.', structure.cells, fast_seconds, naive_seconds,
               speedup)
  return speedup, RelativeError(spectrum.coeffs[indices], naive)


def CheckFastTransform(thresholds, options):
  results = []
  structures = _SmallStructures(options)[:1] + [_Dyadic(10, options),
                                                 _Dyadic(12, options)]
  for structure in structures:
    f = RandomFunction(structure,
                       vilenkinlab.util.XorShift64Star(options.seed))
    error = RelativeError(vilenkinlab.transform.Analyze(f).coeffs,
                          vilenkinlab.transform.AnalyzeNaive(f).coeffs)
    results.append(AtMost('fast-naive[M=%d]' % structure.cells, error,
                          thresholds['fast_naive_relative_error']))
  speedup, error = MeasureSpeedup(
      _Dyadic(16, options), vilenkinlab.util.XorShift64Star(options.seed))
  results.append(AtMost('fast-naive-sampled[M=65536]', error,
                        thresholds['fast_naive_relative_error']))
  results.append(AtLeast('fast-speedup[M=65536]', speedup,
                         options.speedup or thresholds['fast_naive_speedup']))
  return results


def CheckFejerAlgebra(thresholds, options):
  structure = _Dyadic(8, options)
  generator = vilenkinlab.util.XorShift64Star(options.seed)
  band = structure.M[3]
  worst_law = 0.0
  worst_identity = 0.0
  for _ in range(50):
    spectrum = vilenkinlab.transform.Spectrum(
        structure, generator.ComplexArray(structure.cells))
    n = 1 + generator.NextUInt64() % structure.cells
    mean = vilenkinlab.transform.Analyze(
        vilenkinlab.transform.FejerMean(spectrum, n))
    expected = spectrum.coeffs * vilenkinlab.transform.FejerWeights(
        structure, n)
    worst_law = max(worst_law,
                    float(np.abs(mean.coeffs - expected).max()))

    limited = spectrum.Truncated(0, band)
    f = vilenkinlab.transform.Synthesize(limited)
    n = band + 1 + generator.NextUInt64() % (structure.cells - band)
    direct = vilenkinlab.transform.FejerMean(limited, n) - f
    scaled = (band / float(n)) * (
        vilenkinlab.transform.FejerMean(limited, band) - f)
    worst_identity = max(worst_identity,
                         float(np.abs((direct - scaled).values).max()))
  return [AtMost('fejer-coefficient-law', worst_law,
                 thresholds['fejer_algebra_error']),
          AtMost('fejer-band-identity', worst_identity,
                 thresholds['fejer_algebra_error'])]


def _Constructions(options):
  constructions = [
      vilenkinlab.counterexamples.Build2a(p, 10, _Dyadic(11, options))
      for p in (0.25, 1.0 / 3.0)]
  constructions.append(
      vilenkinlab.counterexamples.Build2b(3, _Dyadic(17, options)))
  return constructions


def _Name(construction):
  if isinstance(construction, vilenkinlab.counterexamples.Construction2b):
    return '2b'
  return '2a[p=%g]' % construction.p


def CheckCoefficientLaws(thresholds, options):
  return [AtMost('coefficient-law-%s' % _Name(construction),
                 CoefficientLawError(construction),
                 thresholds['coefficient_law_error'])
          for construction in _Constructions(options)]


def CheckAtoms(thresholds, options):
  results = []
  for construction in _Constructions(options):
    certificates = construction.Decomposition().Certificates()
    results.append(AtMost('atoms-%s' % _Name(construction),
                          sum(1 for c in certificates if not c.valid), 0))
  return results


def CheckModulus(thresholds, options):
  first, _, second = _Constructions(options)
  limits = thresholds['modulus_ratio_2a']
  report = vilenkinlab.counterexamples.ModulusReport2a(first, range(1, 9))
  results = [AtMost('modulus-2a', max(row.values['ratio'] for row in report),
                    limits['max_ratio'])]
  limits = thresholds['modulus_ratio_2b']
  report = vilenkinlab.counterexamples.ModulusReport2b(second, range(5, 17))
  results.append(AtMost('modulus-2b',
                        max(row.values['ratio'] for row in report),
                        limits['max_ratio']))
  return results


def CheckDivergence(thresholds, options):
  first, _, second = _Constructions(options)
  return [
      AtLeast('divergence-2a',
              min(vilenkinlab.counterexamples.Divergence2a(first, k)
                  for k in range(3, 9)), thresholds['divergence_2a']),
      AtLeast('divergence-2b',
              min(vilenkinlab.counterexamples.Divergence2b(second, k)
                  for k in range(1, 4)), thresholds['divergence_2b']),
  ]


def CheckKernelScan(thresholds, options):
  limits = thresholds['kernel_scan_ratio']
  records = vilenkinlab.counterexamples.KernelHalfnormScan(
      range(2, 8), _Dyadic(15, options))
  return [AtLeast('kernel-scan', min(row.values['ratio'] for row in records),
                  limits['min_ratio'])]


def CheckFejerDecay(thresholds, options):
  structure = _Dyadic(10, options)
  results = []
  for family in ('smoothed-indicator', 'character-polynomial'):
    spectrum = ConvergenceSpectrum(
        family, structure, {},
        vilenkinlab.util.XorShift64Star(options.seed))
    f = vilenkinlab.transform.Synthesize(spectrum)
    for p in (0.5, 0.25):
      results.extend(DecayChecks(
          '%s[p=%g]' % (family, p), DyadicFejerErrors(spectrum, p),
          vilenkinlab.norms.LpQuasinorm(f, p), 2, thresholds))
  return results


def SeededRatioStatistic(structure, p, seed, samples=128, n_max=256):
  """Returns the mean over seeded samples of max_n of the weighted ratio.

  Only the seeded random functions enter, so the statistic moves with the
  seed. The atoms and the construction are left out.
  """
  parameters = {'atoms': 0, 'random_functions': samples, 'support_depth': 2,
                'construction': False}
  maxima = list(MaximalRatioMaxima(structure, p, parameters, seed,
                                   n_max).values())
  return float(np.mean(maxima))


def CheckMaximalRatio(thresholds, options):
  structure = _Dyadic(10, options)
  statistics = np.array([
      SeededRatioStatistic(structure, 0.5, options.seed + offset)
      for offset in range(10)])
  variation = (float(np.std(statistics) / np.mean(statistics))
               if np.all(np.isfinite(statistics)) and np.mean(statistics) > 0
               else float('inf'))
  _logger.info('Seeded maximal ratio statistics: %s', statistics.tolist())
  return [AtMost('maximal-ratio-variation', variation,
                 thresholds['maximal_ratio_variation'])]


# The acceptance checks in the order `vilenkin-lab check` runs them.
ACCEPTANCE_CHECKS = (
    ('orthonormality', CheckOrthonormality),
    ('dirichlet-closed-form', CheckDirichletClosedForm),
    ('kernel-bound', CheckKernelBound),
    ('fast-transform', CheckFastTransform),
    ('fejer-algebra', CheckFejerAlgebra),
    ('coefficient-laws', CheckCoefficientLaws),
    ('atoms', CheckAtoms),
    ('modulus', CheckModulus),
    ('divergence', CheckDivergence),
    ('kernel-scan', CheckKernelScan),
    ('fejer-decay', CheckFejerDecay),
    ('maximal-ratio', CheckMaximalRatio),
)
