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

"""Unit tests to cover the experiments module."""


import io
import json
import unittest
from unittest import mock

import numpy as np
from pyfakefs import fake_filesystem_unittest

import vilenkinlab.common
import vilenkinlab.counterexamples
import vilenkinlab.errors
import vilenkinlab.experiments
import vilenkinlab.group
import vilenkinlab.norms
import vilenkinlab.transform
import vilenkinlab.util
from . import testing


VilenkinStructure = vilenkinlab.group.VilenkinStructure
experiments = vilenkinlab.experiments


def _Config(structure, experiment, parameters=None, p_values=None, **kwargs):
  return vilenkinlab.common.ExperimentConfig(
      structure, experiment, p_values, parameters, cells_cap=2 ** 16,
      **kwargs)


def _Statistics(result, statistic):
  return [record for record in result.records
          if record.keys.get('statistic') == statistic]


def _Checks(result):
  return {check.name: check for check in result.checks}


class HelpersTest(unittest.TestCase):
  """Tests for the comparison and grid helpers."""

  def testLogGrid(self):
    self.assertEqual([1, 2, 3, 5, 9, 16], experiments.LogGrid(16, 6))
    self.assertEqual([1, 3, 6, 16], experiments.LogGrid(16, 4))
    self.assertEqual([1], experiments.LogGrid(1, 5))

  def testAtMostAndAtLeast(self):
    self.assertTrue(experiments.AtMost('a', 1.0, 1.0).passed)
    self.assertFalse(experiments.AtMost('a', 1.5, 1.0).passed)
    self.assertTrue(experiments.AtLeast('b', 2, 1.0).passed)
    with self.assertLogs('vilenkinlab.experiments', level='WARNING'):
      self.assertFalse(experiments.AtLeast('b', 0.5, 1.0).passed)

  def testNanNeverPasses(self):
    with self.assertLogs('vilenkinlab.experiments', level='WARNING'):
      self.assertFalse(experiments.AtMost('a', float('nan'), 1.0).passed)
      self.assertFalse(experiments.AtLeast('a', float('nan'), 1.0).passed)

  def testLoadThresholds(self):
    thresholds = experiments.LoadThresholds()
    self.assertEqual(1e-12, thresholds['gram_max_error'])
    self.assertEqual(0.25, thresholds['modulus_ratio_2a']['p'])
    self.assertEqual(0.3, thresholds['kernel_scan_ratio']['min_ratio'])
    self.assertRaises(vilenkinlab.errors.VilenkinLabValueError,
                      experiments.LoadThresholds, '/no/such/thresholds.json')

  def testRelativeError(self):
    self.assertAlmostEqual(0.5, experiments.RelativeError([1, 3], [1, 2]))
    self.assertEqual(0.0, experiments.RelativeError([0, 0], [0, 0]))

  def testRandomAtomLike(self):
    structure = VilenkinStructure.Dyadic(5)
    f = experiments.RandomAtomLike(structure,
                                   vilenkinlab.util.XorShift64Star(3), 2)
    self.assertAlmostEqual(0.0, abs(f.Integral()))
    self.assertTrue(np.all(f.values[8:] == 0))


class StatisticsTest(unittest.TestCase):
  """Tests for the Gram, Parseval and closed-form statistics."""

  def testGramError(self):
    self.assertLess(experiments.GramError(testing.MixedStructure()), 1e-12)

  def testGramError_capacity(self):
    self.assertRaises(vilenkinlab.errors.CapacityError,
                      experiments.GramError, VilenkinStructure.Dyadic(13))

  def testParsevalError(self):
    f = testing.RandomStepFunction(testing.MixedStructure(), seed=4)
    self.assertLess(experiments.ParsevalError(f), 1e-10)

  def testDirichletClosedFormError(self):
    structure = VilenkinStructure.Dyadic(6)
    for j in range(structure.resolution + 1):
      self.assertLess(experiments.DirichletClosedFormError(structure, j),
                      1e-12)

  def testConvergenceSpectrum(self):
    structure = VilenkinStructure.Dyadic(6)
    generator = vilenkinlab.util.XorShift64Star(1)
    polynomial = experiments.ConvergenceSpectrum(
        'character-polynomial', structure, {'support': 2}, generator)
    self.assertEqual(1.0, polynomial.coeffs[0])
    self.assertLess(polynomial.Support()[-1], 4)
    constant = experiments.ConvergenceSpectrum(
        'constant', structure, {'value': 3.0}, generator)
    self.assertEqual([0], constant.Support().tolist())

  def testConvergenceSpectrum_unknownFamily(self):
    self.assertRaises(vilenkinlab.errors.VilenkinLabValueError,
                      experiments.ConvergenceSpectrum, 'gaussian',
                      VilenkinStructure.Dyadic(3), {},
                      vilenkinlab.util.XorShift64Star(1))


class RunTest(unittest.TestCase):
  """Tests for small runs of every experiment."""

  def testRun_gram(self):
    config = _Config(testing.MixedStructure(), 'gram',
                     {'random_functions': 5})
    result = experiments.Run(config)
    self.assertEqual(6, len(result.records))
    self.assertEqual(['gram', 'parseval'],
                     [check.name for check in result.checks])
    self.assertTrue(all(check.passed for check in result.checks))
    for record in result.records:
      self.assertEqual(config.Hash(), record.config_hash)
    self.assertEqual(sorted(result.records, key=lambda r: r.SortKey()),
                     result.records)

  def testRun_isDeterministic(self):
    config = _Config(testing.MixedStructure(), 'gram',
                     {'random_functions': 3})
    first = [r.values['value'] for r in experiments.Run(config).records]
    second = [r.values['value'] for r in experiments.Run(config).records]
    self.assertEqual(first, second)

  def testRun_kernels(self):
    result = experiments.Run(_Config(VilenkinStructure.Dyadic(5), 'kernels',
                                     {'points': 4}))
    self.assertEqual(6, len(_Statistics(result, 'dirichlet-closed-form')))
    self.assertEqual(1, len(_Statistics(result, 'bound-3a')))
    for record in _Statistics(result, 'kernel-integrals'):
      self.assertAlmostEqual(1.0, record.values['value'])
      self.assertAlmostEqual(1.0, record.values['fejer_integral'])
    self.assertEqual(['dirichlet-closed-form', 'bound-3a[A=3]'],
                     [check.name for check in result.checks])
    self.assertTrue(all(check.passed for check in result.checks))

  def testRun_convergenceConstant(self):
    result = experiments.Run(_Config(
        VilenkinStructure.Dyadic(4), 'convergence',
        {'family': 'constant', 'points': 6}, p_values=[0.5]))
    self.assertEqual(6, len(_Statistics(result, 'fejer-error')))
    self.assertEqual(5, len(_Statistics(result, 'dyadic-fejer-error')))
    for record in result.records:
      self.assertAlmostEqual(0.0, record.values['value'])
    self.assertTrue(all(check.passed for check in result.checks))

  def testRun_convergenceSmoothedIndicator(self):
    result = experiments.Run(_Config(
        VilenkinStructure.Dyadic(6), 'convergence',
        {'family': 'smoothed-indicator', 'depth': 3, 'smoothing': 2,
         'points': 8}, p_values=[0.5]))
    checks = _Checks(result)
    self.assertTrue(checks['convergence-split[p=0.5]'].passed)
    self.assertTrue(
        checks['smoothed-indicator[p=0.5]-running-min'].passed)
    errors = [r.values['value']
              for r in _Statistics(result, 'dyadic-fejer-error')]
    for k in range(2, 6):
      self.assertAlmostEqual(2.0, errors[k] / errors[k + 1])

  def testRun_convergenceDecayStartsAtLevelTwo(self):
    config = _Config(VilenkinStructure.Dyadic(6), 'convergence',
                     {'family': 'character-polynomial', 'support': 4,
                      'points': 4}, p_values=[0.5])
    with mock.patch.object(experiments, 'DecayChecks',
                           return_value=[]) as decay:
      experiments.Run(config)
    self.assertEqual(1, decay.call_count)
    self.assertEqual(2, decay.call_args[0][3])
    self.assertEqual(7, len(decay.call_args[0][1]))

  def testRun_counterexample2a(self):
    result = experiments.Run(_Config(
        VilenkinStructure.Dyadic(6), 'counterexample-2a',
        {'A': 5, 'modulus_levels': [1, 2], 'divergence_levels': []},
        p_values=[0.25]))
    checks = _Checks(result)
    self.assertTrue(checks['coefficient-law-2a[p=0.25]'].passed)
    self.assertTrue(checks['atoms-2a[p=0.25]'].passed)
    self.assertNotIn('divergence-2a[p=0.25]', checks)
    self.assertEqual(6, len(_Statistics(result, 'atom')))
    self.assertEqual(7, len(_Statistics(result, 'fejer-decay')))
    self.assertEqual(7, len(_Statistics(result, 'martingale-difference')))

  def testRun_counterexample2b(self):
    result = experiments.Run(_Config(VilenkinStructure.Dyadic(9),
                                     'counterexample-2b'))
    checks = _Checks(result)
    self.assertTrue(checks['coefficient-law-2b'].passed)
    self.assertTrue(checks['atoms-2b'].passed)
    self.assertEqual(2, len(_Statistics(result, 'atom')))
    self.assertEqual(2, len(_Statistics(result, 'divergence')))
    self.assertEqual(2, len(_Statistics(result, 'partial-sum-formula')))
    for record in result.records:
      self.assertEqual(0.5, record.keys['p'])

  def testRun_kernelScan(self):
    result = experiments.Run(_Config(VilenkinStructure.Dyadic(7),
                                     'kernel-scan'))
    self.assertEqual([1, 2, 3], [r.keys['A'] for r in result.records])
    self.assertEqual(['kernel-scan', 'kernel-scan-floor'],
                     [check.name for check in result.checks])
    self.assertTrue(all(check.passed for check in result.checks))
    scan = _Checks(result)['kernel-scan']
    self.assertEqual(0.3, scan.threshold)
    self.assertGreater(scan.statistic, 1.5)

  def testRun_kernelScanCapacity(self):
    self.assertRaises(vilenkinlab.errors.CapacityError, experiments.Run,
                      _Config(VilenkinStructure.Dyadic(7), 'kernel-scan',
                              {'a_values': [3, 4]}))

  def testRun_maximalBound(self):
    result = experiments.Run(_Config(
        VilenkinStructure.Dyadic(4), 'maximal-bound',
        {'atoms': 2, 'random_functions': 1, 'points': 4}, p_values=[0.5]))
    self.assertEqual(12, len(result.records))
    self.assertEqual({'atom-0', 'atom-1', 'random-0'},
                     {r.keys['sample'] for r in result.records})
    for record in result.records:
      self.assertLessEqual(record.values['ratio'],
                           record.values['running_max'])
    self.assertTrue(_Checks(result)['maximal-bound-finite[p=0.5]'].passed)


class MaximalRatioTest(unittest.TestCase):
  """Tests for the weighted maximal ratios and their seed stability."""

  def setUp(self):
    self.structure = VilenkinStructure.Dyadic(6)

  def testMaximalRatioMaxima(self):
    maxima = experiments.MaximalRatioMaxima(
        self.structure, 0.5,
        {'atoms': 1, 'random_functions': 2, 'construction': False}, 1, 32)
    self.assertEqual(['atom-0', 'random-0', 'random-1'], list(maxima))
    for value in maxima.values():
      self.assertTrue(np.isfinite(value))
      self.assertGreater(value, 0.0)

  def testMaximalRatios_usesLpQuasinorm(self):
    spectrum = vilenkinlab.counterexamples.AtomSpectrum2a(1, 0.5,
                                                          self.structure)
    for n, norm, _, _ in experiments.MaximalRatios(spectrum, 0.5, 8):
      expected = vilenkinlab.norms.LpQuasinorm(
          vilenkinlab.transform.FejerMean(spectrum, n), 0.5)
      self.assertAlmostEqual(expected, norm)

  def testSeededRatioStatistic_followsSeed(self):
    first = experiments.SeededRatioStatistic(self.structure, 0.5, 1,
                                             samples=3, n_max=16)
    again = experiments.SeededRatioStatistic(self.structure, 0.5, 1,
                                             samples=3, n_max=16)
    other = experiments.SeededRatioStatistic(self.structure, 0.5, 2,
                                             samples=3, n_max=16)
    self.assertEqual(first, again)
    self.assertNotEqual(first, other)

  def testCheckMaximalRatio_passesOnStableStatistics(self):
    options = experiments.CheckOptions(cells_cap=2 ** 22, seed=7,
                                       speedup=None)
    with mock.patch.object(experiments, 'SeededRatioStatistic',
                           side_effect=[1.0, 1.1] * 5) as statistic:
      result, = experiments.CheckMaximalRatio(experiments.LoadThresholds(),
                                              options)
    self.assertEqual(list(range(7, 17)),
                     [call[0][2] for call in statistic.call_args_list])
    self.assertTrue(result.passed)
    self.assertAlmostEqual(0.05 / 1.05, result.statistic)

  def testCheckMaximalRatio_failsOnSeedDependence(self):
    options = experiments.CheckOptions(cells_cap=2 ** 22, seed=1,
                                       speedup=None)
    with mock.patch.object(experiments, 'SeededRatioStatistic',
                           side_effect=[0.02, 0.04] * 5):
      with self.assertLogs('vilenkinlab.experiments', level='WARNING'):
        result, = experiments.CheckMaximalRatio(
            experiments.LoadThresholds(), options)
    self.assertFalse(result.passed)
    self.assertAlmostEqual(1.0 / 3.0, result.statistic)


class WriterTest(unittest.TestCase):
  """Tests for the CSV and JSON table writers."""

  def setUp(self):
    self.records = [
        vilenkinlab.common.ExperimentRecord(
            'gram', [('statistic', 'gram'), ('sample', 0)], [('value', 0.5)],
            'abc'),
        vilenkinlab.common.ExperimentRecord(
            'gram', [('sample', 1)],
            [('value', 1.5), ('extra', float('nan'))], 'abc'),
    ]

  def testWriteCsv(self):
    handle = io.StringIO()
    experiments.WriteCsv(self.records, 'abc', handle)
    self.assertEqual(['# schema=1, config=abc',
                      'experiment,statistic,sample,value,extra,config',
                      'gram,gram,0,0.5,,abc',
                      'gram,,1,1.5,nan,abc'],
                     handle.getvalue().splitlines())

  def testWriteCsv_fullPrecision(self):
    handle = io.StringIO()
    record = vilenkinlab.common.ExperimentRecord('gram', [], [('value', 0.1)],
                                                 'abc')
    experiments.WriteCsv([record], 'abc', handle)
    self.assertIn('0.10000000000000001', handle.getvalue())

  def testWriteJson(self):
    handle = io.StringIO()
    experiments.WriteJson(self.records, 'abc', handle)
    document = json.loads(handle.getvalue())
    self.assertEqual(['schema', 'config', 'rows'], list(document))
    self.assertEqual(1, document['schema'])
    self.assertEqual('abc', document['config'])
    self.assertEqual(2, len(document['rows']))
    self.assertIsNone(document['rows'][1]['extra'])
    self.assertEqual(0.5, document['rows'][0]['value'])


class EmitTest(fake_filesystem_unittest.TestCase):
  """Tests for Emit."""

  def setUp(self):
    self.setUpPyfakefs()
    self.config = _Config(VilenkinStructure.Dyadic(2), 'gram')
    self.result = experiments.ExperimentResult([
        vilenkinlab.common.ExperimentRecord(
            'gram', [('sample', 0)], [('value', 0.25)], self.config.Hash())
    ], [])

  def testEmit_stream(self):
    stream = io.StringIO()
    experiments.Emit(self.config, self.result, stream)
    self.assertTrue(stream.getvalue().startswith(
        '# schema=1, config=%s\n' % self.config.Hash()))

  def testEmit_path(self):
    self.fs.create_dir('/out')
    config = self.config.Override(output_path='/out/gram.json',
                                  output_format='json')
    with self.assertLogs('vilenkinlab.experiments', level='INFO'):
      experiments.Emit(config, self.result)
    with open('/out/gram.json') as handle:
      document = json.load(handle)
    self.assertEqual(self.config.Hash(), document['config'])
    self.assertEqual(0.25, document['rows'][0]['value'])

  def testEmit_stdout(self):
    with mock.patch('sys.stdout', new_callable=io.StringIO) as stdout:
      experiments.Emit(self.config, self.result)
    self.assertIn('gram,0,0.25,', stdout.getvalue())


class AcceptanceChecksTest(unittest.TestCase):
  """Tests for the acceptance check registry."""

  def testRegistry(self):
    self.assertEqual(12, len(experiments.ACCEPTANCE_CHECKS))
    names = [name for name, _ in experiments.ACCEPTANCE_CHECKS]
    self.assertEqual(len(names), len(set(names)))

  def testCheckKernelBound(self):
    options = experiments.CheckOptions(cells_cap=2 ** 22, seed=1,
                                       speedup=None)
    results = experiments.CheckKernelBound(experiments.LoadThresholds(),
                                           options)
    self.assertEqual(4, len(results))
    self.assertTrue(all(result.passed for result in results))

  def testCheckKernelScan(self):
    options = experiments.CheckOptions(cells_cap=2 ** 22, seed=1,
                                       speedup=None)
    result, = experiments.CheckKernelScan(experiments.LoadThresholds(),
                                          options)
    self.assertTrue(result.passed)
    self.assertEqual(0.3, result.threshold)
    self.assertGreater(result.statistic, 1.4)

  def testChecksRespectCellCap(self):
    options = experiments.CheckOptions(cells_cap=64, seed=1, speedup=None)
    self.assertRaises(vilenkinlab.errors.CapacityError,
                      experiments.CheckOrthonormality,
                      experiments.LoadThresholds(), options)


if __name__ == '__main__':
  unittest.main()
