import collections
import logging
import threading
import traceback

import numpy as np

import jbtk.errors as errors
import jbtk.report as report


ERROR = 'error'

TrialResult = collections.namedtuple(
    'TrialResult', ['index', 'outcome', 'residual', 'witness', 'message'])


class Trial(object):
    """
    One evaluation of a check on its own random stream
    """

    def __init__(self, index, check, seed_sequence):
        """
        Instantiate this trial

        Args:
            index: Position of the trial in its run
            check: Function (rng, index) -> (ok, residual, witness)
            seed_sequence: numpy SeedSequence owned by this trial
        """
        self._index = index
        self._check = check
        self._seed_sequence = seed_sequence

    def call(self):
        """
        Run the check.

        Inapplicable inputs and unexpected failures are recorded in the
        result; consistency errors propagate to the executor.
        """
        thread = threading.current_thread()
        logging.debug('{0} runs trial {1}'.format(str(thread), self._index))
        rng = np.random.default_rng(self._seed_sequence)
        try:
            ok, residual, witness = self._check(rng, self._index)
        except errors.ConsistencyError:
            raise
        except errors.InapplicableError as e:
            logging.info('trial {0} inapplicable, {1}'.format(self._index, e))
            return TrialResult(
                self._index, report.INAPPLICABLE, None, None, str(e))
        except Exception as e:
            logging.error('trial {0} failed, {1}'.format(self._index, e))
            logging.error(traceback.format_exc())
            return TrialResult(self._index, ERROR, None, None, str(e))
        outcome = report.PASS if ok else report.FAIL
        return TrialResult(self._index, outcome, residual, witness, None)
