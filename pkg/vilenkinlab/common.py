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

"""Configuration loading and record types shared by all experiments."""

import collections
import hashlib
import json
import logging
import logging.config
import os
import warnings

import yaml

import vilenkinlab.errors
import vilenkinlab.group


_logger = logging.getLogger(__name__)

VERSION = '1.0.0'
SCHEMA_VERSION = 1

_LOGGING_KEY = 'logging'
_STRUCTURE_KEY = 'structure'
_EXPERIMENT_KEY = 'experiment'

# The keys an experiment document must provide.
_REQUIRED_KEYS = (_STRUCTURE_KEY, _EXPERIMENT_KEY)
# The keys an experiment document may provide.
_OPTIONAL_KEYS = ('p_values', 'parameters', 'output', 'seed',
                  'cells_cap')

EXPERIMENTS = ('gram', 'kernels', 'convergence', 'counterexample-2a',
               'counterexample-2b', 'kernel-scan', 'maximal-bound')
OUTPUT_FORMATS = ('csv', 'json')

DEFAULT_CELL_CAP = 2 ** 22
CELL_CAP_ENV = 'VILENKIN_CELL_CAP'
DEFAULT_SEED = 1


def DefaultCellCap():
  """Returns the cell cap from VILENKIN_CELL_CAP, or 2**22 when unset.

  Raises:
    VilenkinLabValueError: If the variable is not a positive integer.
  """
  raw = os.environ.get(CELL_CAP_ENV)
  if raw is None:
    return DEFAULT_CELL_CAP
  try:
    cap = int(raw)
  except ValueError:
    cap = 0
  if cap <= 0:
    raise vilenkinlab.errors.VilenkinLabValueError(
        '%s must be a positive integer, got "%s".' % (CELL_CAP_ENV, raw))
  return cap


def StructureFromConfig(structure_data, resolution=None):
  """Builds a VilenkinStructure from {m: [...]} or {pattern, repeat_to}.

  Raises:
    VilenkinLabValueError: If neither form is present.
  """
  if not isinstance(structure_data, dict):
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The "%s" configuration is empty or invalid' % _STRUCTURE_KEY)
  if 'm' in structure_data:
    m = structure_data['m']
    return vilenkinlab.group.VilenkinStructure(
        m, len(m) if resolution is None else resolution)
  if 'pattern' in structure_data and 'repeat_to' in structure_data:
    repeat_to = int(structure_data['repeat_to'])
    if resolution is None:
      resolution = repeat_to
    return vilenkinlab.group.VilenkinStructure.FromPattern(
        structure_data['pattern'], max(repeat_to, resolution)).WithResolution(
            resolution)
  raise vilenkinlab.errors.VilenkinLabValueError(
      'The "%s" configuration needs either "m" or "pattern" and "repeat_to".'
      % _STRUCTURE_KEY)


class ExperimentConfig(object):
  """A validated experiment document.

  Attributes:
    structure: The VilenkinStructure at the configured resolution.
    experiment: The experiment name, one of EXPERIMENTS.
    p_values: A list of exponents in (0, 1].
    parameters: A dict of experiment-specific parameters.
    output: A dict with optional "path" and "format" keys.
    seed: The integer seed of the random generator.
    cells_cap: The largest admissible M_N.
  """

  def __init__(self, structure, experiment, p_values=None, parameters=None,
               output=None, seed=DEFAULT_SEED, cells_cap=None):
    """Initializes an ExperimentConfig.

    Raises:
      VilenkinLabValueError: If the experiment or an exponent is invalid.
      CapacityError: If the structure exceeds the cell cap.
    """
    if experiment not in EXPERIMENTS:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Unrecognized experiment "%s". Supported experiments: %s'
          % (experiment, EXPERIMENTS))
    p_values = [float(p) for p in (p_values if p_values else [0.25])]
    for p in p_values:
      if not 0.0 < p <= 1.0:
        raise vilenkinlab.errors.VilenkinLabValueError(
            'Every p value must lie in (0, 1], got %r.' % p)
    output = dict(output or {})
    output_format = output.get('format', 'csv')
    if output_format not in OUTPUT_FORMATS:
      raise vilenkinlab.errors.VilenkinLabValueError(
          'Unrecognized output format "%s". Supported formats: %s'
          % (output_format, OUTPUT_FORMATS))
    output['format'] = output_format

    self.structure = structure
    self.experiment = experiment
    self.p_values = p_values
    self.parameters = dict(parameters or {})
    self.output = output
    self.seed = int(seed)
    self.cells_cap = int(cells_cap) if cells_cap else DefaultCellCap()
    self.structure.CheckCapacity(self.cells_cap)

  def Override(self, output_path=None, output_format=None, cells_cap=None,
               seed=None):
    """Returns a copy with command-line overrides applied."""
    output = dict(self.output)
    if output_path is not None:
      output['path'] = output_path
    if output_format is not None:
      output['format'] = output_format
    return ExperimentConfig(
        self.structure, self.experiment, self.p_values, self.parameters,
        output, self.seed if seed is None else seed,
        self.cells_cap if cells_cap is None else cells_cap)

  def Hash(self):
    """Returns 16 hex digits of the SHA-256 of the canonical config."""
    effective = {
        'structure': self.structure.ToDict(),
        'experiment': self.experiment,
        'p_values': self.p_values,
        'parameters': self.parameters,
        'seed': self.seed,
    }
    canonical = json.dumps(effective, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


def LoadFromString(document, cells_cap=None):
  """Loads an ExperimentConfig from a JSON or YAML document.

  Args:
    document: The experiment document; JSON is read as YAML.
    [optional]
    cells_cap: A cell cap taking precedence over the document and the
      environment.

  Returns:
    An ExperimentConfig.

  Raises:
    A VilenkinLabValueError if the document does not contain the information
    necessary to run an experiment.
  """
  try:
    data = yaml.safe_load(document) or {}
  except yaml.YAMLError as e:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The experiment document could not be parsed: %s' % e)
  if not isinstance(data, dict):
    raise vilenkinlab.errors.VilenkinLabValueError(
        'The experiment document must be a mapping.')

  logging_config = data.get(_LOGGING_KEY)
  if logging_config:
    logging.config.dictConfig(logging_config)

  original_keys = list(data.keys())
  data = dict(data)
  data.pop(_LOGGING_KEY, None)
  kwargs = {}
  try:
    for key in _REQUIRED_KEYS:
      kwargs[key] = data.pop(key)
  except KeyError:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Some of the required values are missing. Required '
        'values are: %s, actual values are %s'
        % (_REQUIRED_KEYS, original_keys))

  resolution = data.pop('resolution', None)
  structure = StructureFromConfig(kwargs.pop(_STRUCTURE_KEY), resolution)
  for key in _OPTIONAL_KEYS:
    if key in data:
      kwargs[key] = data.pop(key)

  if cells_cap is not None:
    kwargs['cells_cap'] = cells_cap

  if data:
    warnings.warn('Could not recognize the following keys: %s. '
                  'They were ignored.' % (data,), stacklevel=3)

  return ExperimentConfig(structure, **kwargs)


def LoadFromStorage(path, cells_cap=None):
  """Loads an ExperimentConfig from a JSON or YAML file.

  Args:
    path: A path string to the experiment document.
    [optional]
    cells_cap: A cell cap taking precedence over the document.

  Returns:
    An ExperimentConfig.

  Raises:
    A VilenkinLabValueError if the file cannot be opened or does not contain
    the information necessary to run an experiment.
  """
  if not os.path.isabs(path):
    path = os.path.expanduser(path)

  try:
    with open(path, 'rb') as handle:
      document = handle.read()
  except IOError:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Given experiment file, %s, could not be opened.' % path)

  try:
    return LoadFromString(document, cells_cap)
  except vilenkinlab.errors.VilenkinLabValueError as e:
    raise vilenkinlab.errors.VilenkinLabValueError(
        'Given experiment file, %s, is invalid. %s' % (path, e))


class ExperimentRecord(object):
  """One row of an experiment table.

  Attributes:
    experiment: The experiment name.
    keys: An ordered mapping of index names to index values.
    values: An ordered mapping of statistic names to real values.
    config_hash: The hash of the producing config, or None.
  """

  def __init__(self, experiment, keys, values, config_hash=None):
    self.experiment = experiment
    self.keys = collections.OrderedDict(keys)
    self.values = collections.OrderedDict(values)
    self.config_hash = config_hash

  def WithConfig(self, config_hash):
    return ExperimentRecord(self.experiment, self.keys, self.values,
                            config_hash)

  def SortKey(self):
    return (self.experiment, tuple(self.keys.values()))

  def ToDict(self):
    row = collections.OrderedDict([('experiment', self.experiment)])
    row.update(self.keys)
    row.update(self.values)
    row['config'] = self.config_hash
    return row

  def __repr__(self):
    return 'ExperimentRecord(%r)' % (self.ToDict(),)
