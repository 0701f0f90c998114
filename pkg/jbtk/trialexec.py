import concurrent.futures as futures
import logging
import math

import numpy as np

import jbtk.report as report
import jbtk.trialtask as trialtask


class TrialExecutor(object):
    """
    Trial executor that schedules checks on a thread pool and folds the
    results into a Verdict
    """

    DEFAULT_PARALLELISM = 4

    def __init__(self, num_concurrent=None):
        """
        Initialize the executor

        Args:
            num_concurrent: (Optional) Number of worker threads
        """
        if not num_concurrent:
            num_concurrent = self.DEFAULT_PARALLELISM
        self._num_concurrent = num_concurrent
        self._threadpool = futures.ThreadPoolExecutor(num_concurrent)

    @property
    def num_concurrent(self):
        return self._num_concurrent

    def run(self, name, check, count, seed=0, mode=report.SAMPLED):
        """
        Run a check count times and aggregate.

        Args:
            name: Predicate name for the verdict
            check: Function (rng, index) -> (ok, residual, witness)
            count: Number of trials, or of sweep items for decisive checks
            seed: Root seed; trial i draws from the i-th spawned stream
            mode: report.SAMPLED or report.DECISIVE

        Returns:
            Verdict

        Raises:
            ConsistencyError: If any trial hit a characterization disagreement
        """
        logging.debug('scheduling {0} trials of {1}'.format(count, name))
        streams = np.random.SeedSequence(seed).spawn(count)
        tasks = [trialtask.Trial(i, check, s) for i, s in enumerate(streams)]
        pending = [self._threadpool.submit(task.call) for task in tasks]
        results = [f.result() for f in pending]
        return aggregate(name, results, mode, count, seed)

    def shutdown(self):
        self._threadpool.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, tb):
        self.shutdown()
        return False


def aggregate(name, results, mode, count, seed):
    """
    Fold trial results into a Verdict

    Sampled checks report the first failing trial by index; decisive sweeps
    report the failing input with the largest residual, ties going to the
    lowest index. The residual is the worst seen over all trials.
    A trial that raised, with no real failure beside it, fails the verdict
    with an infinite residual and the trial index as witness.
    """
    results = sorted(results, key=lambda r: r.index)
    applicable = [r for r in results if r.outcome != report.INAPPLICABLE]
    trials = count if mode == report.SAMPLED else None
    trial_seed = seed if mode == report.SAMPLED else None
    if not applicable:
        detail = results[0].message if results else 'no trials'
        return report.Verdict(name, report.INAPPLICABLE, mode,
                              trials=trials, seed=trial_seed, detail=detail)
    residuals = [r.residual for r in applicable if r.residual is not None]
    worst = max(residuals) if residuals else None
    errored = [r for r in applicable if r.outcome == trialtask.ERROR]
    failed = [r for r in applicable if r.outcome == report.FAIL]
    if failed:
        witness = failed[0]
        if mode == report.DECISIVE:
            for r in failed[1:]:
                if r.residual is not None and (
                        witness.residual is None or
                        r.residual > witness.residual):
                    witness = r
        return report.Verdict(name, report.FAIL, mode, residual=worst,
                              witness=witness.witness, trials=trials,
                              seed=trial_seed)
    if errored:
        first = errored[0]
        return report.Verdict(name, report.FAIL, mode, residual=math.inf,
                              witness='trial {0}'.format(first.index),
                              trials=trials, seed=trial_seed,
                              detail='trial {0} raised: {1}'.format(
                                  first.index, first.message))
    return report.Verdict(name, report.PASS, mode, residual=worst,
                          trials=trials, seed=trial_seed)
