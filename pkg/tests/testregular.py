import unittest

import numpy as np
import numpy.testing as npt
from hypothesis import given, settings
from hypothesis import strategies as st

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.matcore as matcore
import jbtk.regular as regular
import jbtk.triple as triple


SEEDS = st.integers(min_value=0, max_value=2 ** 31)
SPACES = (matcore.TripleSpace([(3, 3)]),
          matcore.TripleSpace([(4, 2)]),
          matcore.TripleSpace([(3, 2), (2, 2)]))


class TestGeneralizedInverse(unittest.TestCase):
    """
    Generalized inverses and range tripotents
    """

    def setUp(self):
        self.space = matcore.TripleSpace([(3, 2), (2, 2)])
        self.rng = np.random.default_rng(21)

    def test_scalars(self):
        """
        In C + C the generalized inverse of (2,1) is (1/2,1)
        """
        space = matcore.TripleSpace([(1, 1), (1, 1)])
        x = matcore.Element(space, [[[2]], [[1]]])
        b = regular.generalized_inverse(x)
        npt.assert_allclose([b.data[0][0, 0], b.data[1][0, 0]], [0.5, 1.0])

    def test_complex_scalar(self):
        """
        The generalized inverse of z in C is 1/conj(z)
        """
        space = matcore.TripleSpace([(1, 1)])
        z = 1 + 2j
        b = regular.generalized_inverse(matcore.Element(space, [[[z]]]))
        npt.assert_allclose(b.data[0][0, 0], 1 / np.conj(z))

    def test_regularity_identities(self):
        """
        Q(a)a^ = a and Q(a^)a = a^ for every rank profile
        """
        for ranks in ([0, 0], [1, 2], [2, 1], [2, 2]):
            a = gen.random_element(self.space, ranks, self.rng)
            b = regular.generalized_inverse(a)
            self.assertLess(matcore.distance(
                triple.triple_product(a, b, a), a), 1e-12)
            self.assertLess(matcore.distance(
                triple.triple_product(b, a, b), b), 1e-12)

    def test_range_tripotent(self):
        """
        r(a) is the partial isometry of the polar decomposition
        """
        a = gen.random_element(self.space, [1, 2], self.rng)
        e = regular.range_tripotent(a)
        self.assertEqual(e.ranks, (1, 2))
        res_l, res_q = regular.range_tripotent_residuals(a, e)
        self.assertLess(res_l, 1e-10)
        self.assertLess(res_q, 1e-10)
        p2 = triple.peirce_projections(e)[0]
        self.assertLess(matcore.distance(p2(a), a), 1e-12)

    def test_range_tripotent_of_zero(self):
        """
        The zero element has the zero range tripotent
        """
        e = regular.range_tripotent(self.space.zero())
        self.assertTrue(e.is_zero)

    def test_iteration_converges(self):
        """
        Iterated cubic roots approach the range tripotent
        """
        a = gen.random_element(self.space, [2, 1], self.rng)
        e = regular.range_tripotent(a)
        approx = regular.range_tripotent_by_iteration(a, 20)
        self.assertLess(matcore.distance(approx, e.element), 1e-6)

    def test_positive_in_peirce2(self):
        """
        a is positive invertible in the Peirce-2 algebra of r(a), 2a is
        too, but -a is not
        """
        a = gen.random_element(self.space, [1, 2], self.rng)
        e = regular.range_tripotent(a)
        self.assertTrue(regular.is_positive_invertible_in_peirce2(a, e))
        self.assertFalse(regular.is_positive_invertible_in_peirce2(-a, e))
        eigenvalues, defect = regular.peirce2_spectrum(2 * a, e)
        self.assertEqual(len(eigenvalues), 3)
        self.assertGreater(eigenvalues[0], 0.0)
        self.assertLess(defect, 1e-12)

    @settings(max_examples=10, deadline=None)
    @given(SEEDS)
    def test_orthogonal_additivity(self, seed):
        """
        Orthogonal summands invert separately
        """
        rng = np.random.default_rng(seed)
        a, b = gen.random_orthogonal_pair(self.space, rng)
        self.assertTrue(regular.are_orthogonal(a, b))
        total = regular.generalized_inverse(a - 2 * b)
        expected = (regular.generalized_inverse(a) -
                    0.5 * regular.generalized_inverse(b))
        self.assertLess(matcore.distance(total, expected), 1e-10)


class TestExtremePoints(unittest.TestCase):
    """
    The three characterizations of extreme points
    """

    def setUp(self):
        self.rng = np.random.default_rng(6)

    def test_extreme(self):
        """
        Maximal partial isometries are extreme in every space
        """
        for space in SPACES:
            decision = regular.is_extreme_point(
                gen.random_extreme(space, self.rng))
            self.assertTrue(decision.value)
            self.assertEqual(set(decision.checks.values()), {True})

    def test_not_complete(self):
        """
        A rank-1 tripotent in a 4x2 block is not extreme
        """
        space = matcore.TripleSpace([(4, 2)])
        decision = regular.is_extreme_point(
            gen.random_tripotent(space, [1], self.rng))
        self.assertFalse(decision.value)
        self.assertEqual(decision.witness, 'rank')

    def test_not_tripotent(self):
        """
        A contraction with a singular value below one is not extreme
        """
        space = matcore.TripleSpace([(2, 2)])
        v = matcore.Element(space, [np.diag([1.0, 0.5])])
        decision = regular.is_extreme_point(v)
        self.assertFalse(decision.value)
        self.assertEqual(decision.witness, 'tripotent')

    def test_outside_ball(self):
        """
        Elements of norm above one fail before any decomposition
        """
        space = matcore.TripleSpace([(2, 2)])
        decision = regular.is_extreme_point(2 * space.identity())
        self.assertFalse(decision.value)
        self.assertEqual(decision.witness, 'norm')

    @settings(max_examples=15, deadline=None)
    @given(SEEDS)
    def test_characterizations_agree(self, seed):
        """
        Random tripotents never make the characterizations disagree
        """
        rng = np.random.default_rng(seed)
        for space in SPACES:
            e = gen.random_tripotent(space, None, rng)
            decision = regular.is_extreme_point(e)
            self.assertEqual(decision.value,
                             triple.Tripotent(e).is_complete)


class TestQuasiInvertibility(unittest.TestCase):
    """
    Brown-Pedersen quasi-invertibility
    """

    def setUp(self):
        self.rng = np.random.default_rng(17)

    def test_full_rank(self):
        """
        Full-rank elements are quasi-invertible with quasi-inverse a^
        """
        for space in SPACES:
            a = gen.random_bp_element(space, self.rng)
            decision = regular.is_bp_quasi_invertible(a)
            self.assertTrue(decision.value)
            self.assertLess(matcore.distance(
                decision.witness, regular.generalized_inverse(a)), 1e-14)
            self.assertLess(regular.bergmann_defect(a, decision.witness),
                            1e-10)

    def test_rank_deficient(self):
        """
        Rank-deficient elements have a nontrivial annihilator
        """
        space = matcore.TripleSpace([(4, 2)])
        a = gen.random_element(space, [1], self.rng)
        decision = regular.is_bp_quasi_invertible(a)
        self.assertFalse(decision.value)
        self.assertIsNone(decision.witness)
        self.assertEqual(len(regular.orthogonal_annihilator(a)), 3)

    def test_square_blocks_need_invertibility(self):
        """
        In M3 quasi-invertible means invertible
        """
        space = matcore.TripleSpace([(3, 3)])
        self.assertFalse(regular.is_bp_quasi_invertible(
            gen.random_element(space, [2], self.rng)).value)
        self.assertTrue(regular.is_bp_quasi_invertible(
            gen.random_element(space, [3], self.rng)).value)

    def test_tiny_element(self):
        """
        Elements below the zero threshold are zero for every
        characterization
        """
        space = matcore.TripleSpace([(2, 2)])
        a = 1e-10 * space.identity()
        decision = regular.is_bp_quasi_invertible(a)
        self.assertFalse(decision.value)
        self.assertEqual(set(decision.checks.values()), {False})
        self.assertEqual(len(regular.orthogonal_annihilator(a)), 4)

    def test_tiny_block_in_sum(self):
        """
        A vanishing block is annihilated entirely, the other one not at all
        """
        space = matcore.TripleSpace([(2, 2), (1, 1)])
        a = matcore.Element(space, [1e-12 * np.eye(2), [[3.0]]])
        self.assertEqual(len(regular.orthogonal_annihilator(a)), 4)
        self.assertFalse(regular.is_bp_quasi_invertible(a).value)

    def test_bergmann_zero_consequences(self):
        """
        B(x,y) = 0 forces B(y,x) = 0 and B(x,Q(y)x) = 0
        """
        space = matcore.TripleSpace([(3, 2), (2, 2)])
        x = gen.random_bp_element(space, self.rng)
        y = regular.generalized_inverse(x)
        for value in regular.bergmann_zero_consequences(x, y):
            self.assertLess(value, 1e-9)

    def test_bergmann_defect_matches_operator(self):
        """
        The factored defect bounds the tabulated operator norm
        """
        space = matcore.TripleSpace([(3, 2)])
        x, y = [gen.random_element(space, rng=self.rng) for _ in 'xy']
        self.assertLessEqual(triple.bergmann(x, y).norm(),
                             regular.bergmann_defect(x, y) + 1e-10)


class TestOrthogonality(unittest.TestCase):
    """
    Orthogonality of elements
    """

    def test_disjoint_blocks(self):
        """
        Elements supported in different blocks are orthogonal
        """
        space = matcore.TripleSpace([(2, 2), (1, 1)])
        a = matcore.Element(space, [np.eye(2), [[0]]])
        b = matcore.Element(space, [np.zeros((2, 2)), [[1]]])
        self.assertTrue(regular.are_orthogonal(a, b))
        self.assertFalse(regular.are_orthogonal(a, a))

    def test_space_mismatch(self):
        """
        Elements of different spaces cannot be compared
        """
        a = matcore.TripleSpace([(2, 1)]).zero()
        b = matcore.TripleSpace([(1, 2)]).zero()
        with self.assertRaises(errors.SpaceMismatchError):
            regular.are_orthogonal(a, b)
