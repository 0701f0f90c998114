import io
import unittest

import jbtk.demos as demos


class TestDemos(unittest.TestCase):
    """
    Walkthrough output
    """

    def run_demo(self, name):
        stream = io.StringIO()
        demos.run_demo(name, stream)
        return stream.getvalue()

    def test_two_isometries(self):
        """
        The walkthrough shows the exact values and the failing witness
        """
        text = self.run_demo('remark-two-isometries')
        self.assertIn('x = (2,1), x^ = (1/2,1)', text)
        self.assertIn('T(x) = 3/2 v + 1/2 w', text)
        self.assertIn('T(x)^ = 3/5 v + 1/5 w', text)
        self.assertIn('T(x^) = 3/4 v - 1/4 w', text)
        self.assertIn('preserves-extreme-points: PASS', text)
        self.assertIn('strongly-preserves-BP: FAIL (witness x=(2,1))', text)
        self.assertIn('v*T is a Jordan *-homomorphism: FAIL', text)

    def test_nonunitary(self):
        """
        The walkthrough shows v is an isometry but not a coisometry
        """
        text = self.run_demo('remark-nonunitary')
        self.assertIn('= I2', text)
        self.assertIn('!= I3', text)
        self.assertIn('preserves-extreme-points: PASS', text)
        self.assertIn('T(1) unitary: False', text)
        self.assertIn('T(1) isometry: True, coisometry: False', text)

    def test_unknown(self):
        """
        Unknown demos are refused
        """
        with self.assertRaises(KeyError):
            self.run_demo('nonsense')

    def test_numbered_aliases(self):
        """
        The numbered names print the same walkthroughs
        """
        self.assertEqual(self.run_demo('remark-5-9'),
                         self.run_demo('remark-two-isometries'))
        self.assertEqual(self.run_demo('remark-5-8'),
                         self.run_demo('remark-nonunitary'))
