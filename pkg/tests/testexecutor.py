import unittest

import numpy as np

import jbtk.errors as errors
import jbtk.report as report
import jbtk.trialexec as trialexec
import jbtk.trialtask as trialtask


def failing_from(first):
    """
    Check that fails for every index at or above first, residual = index
    """
    def check(rng, index):
        return index < first, float(index), 'x{0}'.format(index)
    return check


class TestExecutor(unittest.TestCase):
    """
    These test methods ensure proper scheduling and aggregation of trials.
    """
    def setUp(self):
        self.executor = trialexec.TrialExecutor(3)

    def tearDown(self):
        self.executor.shutdown()

    def test_all_pass(self):
        """
        Passing trials give a pass with the worst residual
        """
        verdict = self.executor.run('demo', failing_from(100), 10, seed=4)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.residual, 9.0)
        self.assertEqual(verdict.trials, 10)
        self.assertEqual(verdict.seed, 4)

    def test_sampled_witness_is_first_failure(self):
        """
        Sampled checks report the first failing trial by index
        """
        verdict = self.executor.run('demo', failing_from(3), 8)
        self.assertTrue(verdict.failed)
        self.assertEqual(verdict.witness, 'x3')

    def test_decisive_witness_is_worst_failure(self):
        """
        Decisive sweeps report the largest failing residual
        """
        verdict = self.executor.run('demo', failing_from(3), 8,
                                    mode=report.DECISIVE)
        self.assertEqual(verdict.witness, 'x7')
        self.assertIsNone(verdict.trials)

    def test_decisive_ties_go_to_lowest_index(self):
        """
        Equal residuals keep the lowest index
        """
        def check(rng, index):
            return index == 0, 1.0, index
        verdict = self.executor.run('demo', check, 5, mode=report.DECISIVE)
        self.assertEqual(verdict.witness, 1)

    def test_seeded_streams(self):
        """
        Each trial draws from its own stream, independent of scheduling
        """
        def check(rng, index):
            return True, float(rng.uniform()), None
        first = self.executor.run('demo', check, 20, seed=7)
        with trialexec.TrialExecutor(1) as single:
            second = single.run('demo', check, 20, seed=7)
        self.assertEqual(first.residual, second.residual)

    def test_inapplicable(self):
        """
        All-inapplicable runs are neither pass nor fail
        """
        def check(rng, index):
            raise errors.InapplicableError('no inverse')
        verdict = self.executor.run('demo', check, 4)
        self.assertEqual(verdict.outcome, report.INAPPLICABLE)
        self.assertEqual(verdict.detail, 'no inverse')

    def test_unexpected_error(self):
        """
        A trial that raises counts as a failure with detail
        """
        def check(rng, index):
            if index == 2:
                raise RuntimeError('Failed trial, expected')
            return True, 0.0, None
        verdict = self.executor.run('demo', check, 4)
        self.assertTrue(verdict.failed)
        self.assertIn('Failed trial, expected', verdict.detail)
        self.assertEqual(verdict.witness, 'trial 2')
        self.assertEqual(verdict.residual, float('inf'))
        self.assertEqual(verdict.to_json()['residual'], 'inf')
        self.assertEqual(verdict.describe(), 'FAIL (witness x=trial 2)')

    def test_error_beside_failure(self):
        """
        A real counterexample is reported ahead of a trial that raised
        """
        def check(rng, index):
            if index == 0:
                raise RuntimeError('Failed trial, expected')
            return index != 3, float(index), index
        verdict = self.executor.run('demo', check, 5)
        self.assertTrue(verdict.failed)
        self.assertEqual(verdict.witness, 3)
        self.assertEqual(verdict.residual, 4.0)

    def test_consistency_error_propagates(self):
        """
        Characterization disagreements abort the run
        """
        def check(rng, index):
            raise errors.ConsistencyError('disagree')
        with self.assertRaises(errors.ConsistencyError):
            self.executor.run('demo', check, 2)

    def test_default_parallelism(self):
        """
        Omitted worker counts fall back to the default
        """
        with trialexec.TrialExecutor() as executor:
            self.assertEqual(executor.num_concurrent,
                             trialexec.TrialExecutor.DEFAULT_PARALLELISM)


class TestTrial(unittest.TestCase):
    """
    A single trial records its outcome
    """

    def test_error_outcome(self):
        """
        Unexpected exceptions become error results
        """
        def check(rng, index):
            raise ValueError('bad')
        result = trialtask.Trial(0, check, np.random.SeedSequence(0)).call()
        self.assertEqual(result.outcome, trialtask.ERROR)
        self.assertEqual(result.message, 'bad')
