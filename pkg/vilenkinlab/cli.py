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

"""The vilenkin-lab command line.

  vilenkin-lab run <config> [--out PATH] [--format csv|json]
                            [--cells-cap K] [--seed S] [-v]
  vilenkin-lab check [--cells-cap K] [--seed S] [--speedup X] [-v]

Exit codes: 0 on success, 2 when an assertion-grade check fails, 3 when a
computation exceeds the available resolution or cell cap, 1 for any other
library error.
"""

import argparse
import logging
import sys

import vilenkinlab.common
import vilenkinlab.errors
import vilenkinlab.experiments
import vilenkinlab.util


_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILURE = 2
EXIT_CAPACITY = 3


def _ExitCode(error):
  if isinstance(error, vilenkinlab.errors.CheckFailure):
    return EXIT_CHECK_FAILURE
  if isinstance(error, vilenkinlab.errors.CapacityError):
    return EXIT_CAPACITY
  return EXIT_ERROR


def _Run(args, out):
  config = vilenkinlab.common.LoadFromStorage(args.config,
                                              cells_cap=args.cells_cap)
  config = config.Override(output_path=args.out, output_format=args.format,
                           seed=args.seed)
  result = vilenkinlab.experiments.Run(config)
  vilenkinlab.experiments.Emit(config, result, out)
  failed = [check.name for check in result.checks if not check.passed]
  if failed:
    raise vilenkinlab.errors.CheckFailure(failed)
  return EXIT_OK


def _FormatCheck(check):
  return '%-40s %s  %s  (threshold %s)' % (
      check.name, 'PASS' if check.passed else 'FAIL',
      vilenkinlab.util.FormatFloat(check.statistic),
      vilenkinlab.util.FormatFloat(check.threshold))


def _Check(args, out):
  thresholds = vilenkinlab.experiments.LoadThresholds()
  options = vilenkinlab.experiments.CheckOptions(
      cells_cap=args.cells_cap or vilenkinlab.common.DefaultCellCap(),
      seed=vilenkinlab.common.DEFAULT_SEED if args.seed is None else args.seed,
      speedup=args.speedup)
  code = EXIT_OK
  for name, check in vilenkinlab.experiments.ACCEPTANCE_CHECKS:
    try:
      results = check(thresholds, options)
    except vilenkinlab.errors.VilenkinLabError as e:
      out.write('%-40s FAIL  %s\n' % (name, e))
      code = max(code, _ExitCode(e))
      continue
    for result in results:
      out.write(_FormatCheck(result) + '\n')
      if not result.passed:
        code = max(code, EXIT_CHECK_FAILURE)
  return code


def BuildParser():
  """Returns the argparse parser of the command line."""
  common = argparse.ArgumentParser(add_help=False)
  common.add_argument('-v', '--verbose', action='count', default=0,
                      help='Log INFO with -v and DEBUG with -vv.')
  common.add_argument('--cells-cap', type=int, default=None,
                      help='The largest admissible number of cells M_N.')
  common.add_argument('--seed', type=int, default=None,
                      help='The seed of the random generator.')

  parser = argparse.ArgumentParser(
      prog='vilenkin-lab',
      description='Fourier analysis experiments on bounded Vilenkin groups.')
  subparsers = parser.add_subparsers(dest='command')
  subparsers.required = True

  run = subparsers.add_parser('run', parents=[common],
                              help='Run the experiment of a config file.')
  run.add_argument('config', help='A JSON or YAML experiment document.')
  run.add_argument('--out', default=None, help='The output path.')
  run.add_argument('--format', default=None,
                   choices=vilenkinlab.common.OUTPUT_FORMATS)
  run.set_defaults(handler=_Run)

  check = subparsers.add_parser('check', parents=[common],
                                help='Run the acceptance checks.')
  check.add_argument('--speedup', type=float, default=None,
                     help='Override the required fast transform speedup.')
  check.set_defaults(handler=_Check)
  return parser


def main(argv=None, out=None):
  """Runs the command line and returns its exit code."""
  args = BuildParser().parse_args(argv)
  vilenkinlab.util.ConfigureDefaultLogging(args.verbose)
  out = out or sys.stdout
  try:
    return args.handler(args, out)
  except vilenkinlab.errors.VilenkinLabError as e:
    sys.stderr.write('vilenkin-lab: %s\n' % e)
    return _ExitCode(e)


if __name__ == '__main__':
  sys.exit(main())
