import argparse
import logging
import os
import sys

import jbtk.codec as codec
import jbtk.constants as constants
import jbtk.demos as demos
import jbtk.errors as errors
import jbtk.maps as maps
import jbtk.matcore as matcore
import jbtk.report as report
import jbtk.suites as suites
import jbtk.trialexec as trialexec


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_ALARM = 3

VERDICT_NAMES = (maps.JORDAN_STAR_HOM, maps.TRIPLE_HOM, maps.EXTREME_PRESERVER,
                 maps.BP_PRESERVER, maps.STRONG_BP, maps.STRONG_REGULARITY,
                 maps.BERGMANN_ZERO, maps.UNITARY_IDENTITIES,
                 maps.FACTORIZATION, maps.CUBES, maps.ORTHOGONALITY)
OUTCOMES = (report.PASS, report.FAIL, report.INAPPLICABLE)


def parse_expect(text):
    """
    Parse "extreme-preserver=pass,strong-bp=fail" into a dictionary

    Raises:
        InputError: On unknown predicate names or outcomes
    """
    expected = {}
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        name, _, outcome = item.partition('=')
        name, outcome = name.strip(), outcome.strip().lower()
        if name not in VERDICT_NAMES:
            raise errors.InputError('unknown predicate {0!r}'.format(name))
        if outcome not in OUTCOMES:
            raise errors.InputError('unknown outcome {0!r} for {1}'.format(
                outcome, name))
        expected[name] = outcome
    return expected


def _emit(args, node, text, stream):
    if args.out:
        codec.dump_report(node, path=args.out)
    if args.json:
        codec.dump_report(node, stream=stream)
    else:
        stream.write(text)


def _describe_check(node):
    lines = ['{0}: {1} -> {2}'.format(
        node['id'], node['meta']['domain']['blocks'],
        node['meta']['codomain']['blocks'])]
    for name in sorted(node['verdicts']):
        verdict = node['verdicts'][name]
        line = '  {0}: {1}'.format(name, verdict['outcome'].upper())
        if verdict['outcome'] == report.FAIL and verdict['witness'] is not None:
            line += ' (witness {0})'.format(verdict['witness'])
        lines.append(line)
    for alarm in node['alarms']:
        lines.append('  ALARM: {0}'.format(alarm))
    return '\n'.join(lines) + '\n'


def cmd_check(args, stream):
    """
    Classify one map and compare against --expect
    """
    expected = parse_expect(args.expect) if args.expect else {}
    T = codec.load_map(args.map)
    with trialexec.TrialExecutor(args.workers) as executor:
        node = maps.classify(T, args.trials, args.seed, args.tolerances,
                             executor)
    mismatches = []
    for name in sorted(expected):
        actual = node['verdicts'][name]['outcome']
        if actual != expected[name]:
            mismatches.append('{0}: expected {1}, got {2}'.format(
                name, expected[name], actual))
    node['expect_mismatches'] = mismatches
    _emit(args, node, _describe_check(node), stream)
    if node['alarms']:
        return EXIT_ALARM
    if mismatches:
        for mismatch in mismatches:
            logging.error(mismatch)
        return EXIT_FAILURE
    return EXIT_OK


def _describe_suite(node):
    lines = []
    for assertion_id in sorted(node['assertions']):
        record = node['assertions'][assertion_id]
        line = '{0}/{1}: {2} (residual {3})'.format(
            node['id'], assertion_id, 'PASS' if record['passed'] else 'FAIL',
            record['residual'])
        if not record['passed']:
            if record['witness'] is not None:
                line += ' witness {0}'.format(record['witness'])
            if record['detail']:
                line += ' [{0}]'.format(record['detail'])
        lines.append(line)
    return '\n'.join(lines) + '\n'


def cmd_verify(args, stream):
    """
    Run one verification suite or all of them
    """
    names = sorted(suites.SUITES) if args.suite == 'all' else [args.suite]
    nodes = {}
    with trialexec.TrialExecutor(args.workers) as executor:
        for name in names:
            nodes[name] = suites.get_suite(
                name, args.trials, args.seed, args.tolerances,
                executor).run()
    if len(nodes) == 1:
        node = nodes[names[0]]
    else:
        node = {'id': 'all', 'suites': nodes,
                'failures': ['{0}/{1}'.format(name, failure)
                             for name in names
                             for failure in nodes[name]['failures']]}
    text = ''.join(_describe_suite(nodes[name]) for name in names)
    _emit(args, node, text, stream)
    if any(nodes[name]['failures'] for name in names):
        return EXIT_FAILURE
    return EXIT_OK


def cmd_demo(args, stream):
    with trialexec.TrialExecutor(args.workers) as executor:
        demos.run_demo(args.name, stream, args.seed, args.tolerances,
                       executor)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='jbtk',
        description='Triple-product toolkit for finite-dimensional matrix '
                    'spaces')
    parser.add_argument('--version', action='version',
                        version=str(constants.CURRENT_VERSION))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--trials', type=int, default=os.getenv('JBTK_TRIALS', '100'),
        help='Random trials per sampled check')
    common.add_argument(
        '--seed', type=int, default=os.getenv('JBTK_SEED', '0'),
        help='Root seed')
    common.add_argument(
        '--tol', type=float, default=os.getenv('JBTK_TOL'),
        help='Absolute zero tolerance (default 1e-9)')
    common.add_argument(
        '--workers', type=int, default=None,
        help='Concurrent trials')
    common.add_argument('--json', action='store_true',
                        help='Print the JSON report')
    common.add_argument('--out', type=str, default=None,
                        help='Also write the JSON report to this file')
    common.add_argument('--verbose', action='store_true', help='Log progress')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    check = subparsers.add_parser('check', parents=[common],
                                  help='Classify a linear map')
    check.add_argument('map', type=str,
                       help='Map JSON file or generator spec')
    check.add_argument('--expect', type=str, default=None,
                       help='Pinned outcomes, e.g. "strong-bp=fail"')
    check.set_defaults(func=cmd_check)

    verify = subparsers.add_parser('verify', parents=[common],
                                   help='Run a verification suite')
    verify.add_argument('suite', choices=sorted(suites.SUITES) + ['all'])
    verify.set_defaults(func=cmd_verify)

    demo = subparsers.add_parser('demo', parents=[common],
                                 help='Print a walkthrough')
    demo.add_argument('name', choices=sorted(demos.DEMOS) +
                      sorted(demos.DEMO_ALIASES))
    demo.set_defaults(func=cmd_demo)
    return parser


def main(argv=None, stream=None):
    """
    Entry point

    Returns:
        0 ok, 1 failed assertion or expectation, 2 usage or input error,
        3 consistency alarm
    """
    if stream is None:
        stream = sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        args.tolerances = matcore.Tolerances(zero_tol=args.tol)
    except ValueError as e:
        sys.stderr.write('error: {0}\n'.format(e))
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARN)
    try:
        return args.func(args, stream)
    except errors.InputError as e:
        position = ''
        if e.line is not None:
            position = ' at line {0}, column {1}'.format(e.line, e.column)
        sys.stderr.write('error{0}: {1}\n'.format(position, e))
        return EXIT_USAGE
    except errors.SpaceMismatchError as e:
        sys.stderr.write('error: {0}\n'.format(e))
        return EXIT_USAGE
    except errors.ConsistencyError as e:
        logging.error('consistency alarm: {0}'.format(e))
        sys.stderr.write('consistency alarm: {0}\n'.format(e))
        return EXIT_ALARM


if __name__ == '__main__':
    sys.exit(main())
