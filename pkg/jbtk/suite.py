import logging
import traceback
import zlib

import numpy as np

import jbtk.errors as errors
import jbtk.matcore as matcore
import jbtk.report as report


def assertion(anchor, threshold):
    """
    Mark a suite method as an assertion

    The method returns a dictionary with at least 'residual'; the wrapper
    adds the anchor text, the threshold and the pass/fail outcome.

    Args:
        anchor: Statement being checked, embedded in every report
        threshold: Largest acceptable residual
    """
    def decorator(func):
        def hidden_func(*args, **kwargs):
            record = {'anchor': anchor, 'threshold': threshold,
                      'witness': None, 'count': None, 'detail': None}
            record.update(func(*args, **kwargs))
            residual = record['residual']
            record['passed'] = bool(residual is not None and
                                    residual <= threshold)
            record['residual'] = report.render_residual(residual)
            record['witness'] = report.render_witness(record['witness'])
            return record
        hidden_func.anchor = anchor
        return hidden_func
    return decorator


class AssertionParser(object):
    """
    Suite helper
    """

    PREFIX = 'assert_'

    def get_method_for_assertion(self, suite, assertion_id):
        """
        Get the callback for an assertion id

        Args:
            suite: The instance of a Suite subclass with the assertions
            assertion_id: Id such as 'hua-identity'

        Returns:
            The method to call
        """
        method_name = self.PREFIX + assertion_id.lower().replace('-', '_')
        logging.debug('method_name: {0}'.format(method_name))
        return getattr(suite, method_name, suite.default_assertion_handler)

    def get_assertion_ids(self, suite):
        """
        Sorted ids of every assertion a suite defines
        """
        return sorted(name[len(self.PREFIX):].replace('_', '-')
                      for name in dir(suite)
                      if name.startswith(self.PREFIX) and
                      callable(getattr(suite, name)))


class Suite(object):
    """
    Base verification suite
    """

    NAME = None
    DEFAULT_TRIALS = 100
    DEFAULT_SEED = 0

    def __init__(self, trials=None, seed=None, tol=None, executor=None):
        """
        Initialize the suite

        Args:
            trials: (Optional) Random instances per assertion
            seed: (Optional) Root seed
            tol: (Optional) Tolerances for the predicates
            executor: (Optional) TrialExecutor for map predicates
        """
        if trials is None:
            trials = self.DEFAULT_TRIALS
        if seed is None:
            seed = self.DEFAULT_SEED
        self.trials = trials
        self.seed = seed
        self.tol = matcore.resolve(tol)
        self.executor = executor
        self._parser = AssertionParser()

    def rng(self, label):
        """
        Random stream owned by one assertion, independent of run order
        """
        key = zlib.crc32(label.encode('utf-8'))
        return np.random.default_rng(np.random.SeedSequence([self.seed, key]))

    def assertion_ids(self):
        return self._parser.get_assertion_ids(self)

    def default_assertion_handler(self):
        """
        Method used when no assertion matches the requested id
        """
        logging.error('No assertion found in suite {0}'.format(self.NAME))
        return {'anchor': None, 'threshold': None, 'residual': None,
                'passed': False, 'witness': None, 'count': None,
                'detail': 'unknown assertion'}

    def run(self, assertion_ids=None):
        """
        Run assertions and collect a report

        Args:
            assertion_ids: (Optional) Subset to run, all by default

        Returns:
            Report dictionary (see report.get_empty_suite_report)

        Raises:
            ConsistencyError: If characterizations disagree anywhere
        """
        if assertion_ids is None:
            assertion_ids = self.assertion_ids()
        node = report.get_empty_suite_report(self.NAME)
        node['meta'] = {'trials': self.trials, 'seed': self.seed,
                        'tolerances': self.tol.to_json()}
        for assertion_id in sorted(assertion_ids):
            method = self._parser.get_method_for_assertion(self, assertion_id)
            logging.info('{0}: running {1}'.format(self.NAME, assertion_id))
            try:
                record = method()
            except errors.ConsistencyError:
                raise
            except Exception as e:
                logging.error('{0} raised, {1}'.format(assertion_id, e))
                logging.error(traceback.format_exc())
                record = {'anchor': getattr(method, 'anchor', None),
                          'threshold': None, 'residual': None,
                          'passed': False, 'witness': None, 'count': None,
                          'detail': 'raised {0}: {1}'.format(
                              type(e).__name__, e)}
            record['id'] = assertion_id
            node['assertions'][assertion_id] = record
            if not record['passed']:
                node['failures'].append(assertion_id)
        return node
