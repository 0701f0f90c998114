import io
import json
import os
import shutil
import tempfile
import unittest

import numpy as np
import numpy.testing as npt

import jbtk.codec as codec
import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.matcore as matcore


EXAMPLES = os.path.join(os.path.dirname(os.path.dirname(__file__)),
                        'jbtk', 'examples', 'maps')


class TestElements(unittest.TestCase):
    """
    JSON form of spaces and elements
    """

    def setUp(self):
        self.space = matcore.TripleSpace([(2, 1), (1, 1)])

    def test_element(self):
        """
        Entries are row-major [re, im] pairs per block
        """
        node = {'space': {'blocks': [[2, 1], [1, 1]]},
                'blocks': [[[1, 0], [0, 2]], [[3, -1]]]}
        x = codec.element_from_json(node)
        npt.assert_array_equal(x.data[0], [[1], [2j]])
        self.assertEqual(x.data[1][0, 0], 3 - 1j)
        self.assertEqual(codec.element_to_json(x), node)

    def test_wrong_entry_count(self):
        """
        Blocks must have rows x cols entries
        """
        node = {'blocks': [[[1, 0]], [[3, 0]]]}
        with self.assertRaises(errors.InputError):
            codec.element_from_json(node, self.space)

    def test_wrong_block_count(self):
        """
        Elements need one entry list per block
        """
        with self.assertRaises(errors.InputError):
            codec.element_from_json({'blocks': [[[1, 0]]]}, self.space)

    def test_bad_pairs(self):
        """
        Entries that are not pairs are refused
        """
        node = {'blocks': [[1, 2], [[3, 0]]]}
        with self.assertRaises(errors.InputError):
            codec.element_from_json(node, self.space)

    def test_bad_space(self):
        """
        Spaces need positive block shapes
        """
        with self.assertRaises(errors.InputError):
            codec.space_from_json({'rows': 2})
        with self.assertRaises(errors.InputError):
            codec.space_from_json({'blocks': [[0, 2]]})

    def test_fractional_dimensions(self):
        """
        Block dimensions must be integers
        """
        for blocks in ([[2.5, 2]], [[2, '2']], [[True, 1]]):
            with self.assertRaises(errors.InputError):
                codec.space_from_json({'blocks': blocks})
        self.assertEqual(codec.space_from_json({'blocks': [[2.0, 1]]}).blocks,
                         ((2, 1),))


class TestMaps(unittest.TestCase):
    """
    JSON form of linear maps and generator specs
    """

    def setUp(self):
        self.tempdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tempdir)

    def write(self, name, text):
        path = os.path.join(self.tempdir, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_map_round_trip(self):
        """
        A random map survives encoding
        """
        space = matcore.TripleSpace([(2, 2)])
        T = gen.random_triple_hom(space, matcore.TripleSpace([(3, 2)]),
                                  np.random.default_rng(2))
        back = codec.map_from_json(json.loads(codec.dumps(
            codec.map_to_json(T))))
        self.assertLess(back.distance(T), 1e-15)

    def test_matrix_size(self):
        """
        The matrix must have dim(codomain) x dim(domain) entries
        """
        node = {'domain': {'blocks': [[1, 1]]},
                'codomain': {'blocks': [[2, 1]]},
                'matrix': [[1, 0]]}
        with self.assertRaises(errors.InputError):
            codec.map_from_json(node)

    def test_missing_field(self):
        """
        Maps need domain, codomain and matrix
        """
        with self.assertRaises(errors.InputError):
            codec.map_from_json({'domain': {'blocks': [[1, 1]]}})
        with self.assertRaises(errors.InputError):
            codec.map_from_json([1, 2])

    def test_generator_spec(self):
        """
        Nodes with a kind are built by the generators
        """
        T = codec.map_from_json({'kind': 'remark_nonunitary'})
        self.assertEqual(T.codomain.blocks, ((3, 2),))

    def test_malformed_position(self):
        """
        Syntax errors report line and column
        """
        with self.assertRaises(errors.InputError) as context:
            codec.loads('{\n  "domain": ,\n}')
        self.assertEqual(context.exception.line, 2)
        self.assertEqual(context.exception.column, 13)

    def test_load_map_names_after_file(self):
        """
        Unnamed maps take the file path as their name
        """
        path = self.write('map.json', json.dumps({
            'domain': {'blocks': [[1, 1]]},
            'codomain': {'blocks': [[1, 1]]},
            'matrix': [[2, 0]]}))
        T = codec.load_map(path)
        self.assertEqual(T.name, path)
        self.assertEqual(T.matrix[0, 0], 2)

    def test_load_missing_file(self):
        """
        Unreadable files are input errors
        """
        with self.assertRaises(errors.InputError):
            codec.load_map(os.path.join(self.tempdir, 'absent.json'))

    def test_bundled_maps(self):
        """
        The bundled example maps load with their names
        """
        T = codec.load_map(os.path.join(EXAMPLES, 'two_isometries.json'))
        self.assertLess(T.distance(gen.remark_two_isometries().map), 1e-15)
        T = codec.load_map(os.path.join(EXAMPLES, 'nonunitary.json'))
        self.assertLess(T.distance(gen.remark_nonunitary().map), 1e-15)
        T = codec.load_map(os.path.join(EXAMPLES, 'identity_m2.json'))
        self.assertEqual(T.name, 'identity-m2')

    def test_dump_report(self):
        """
        Reports are sorted, indented JSON on a stream or in a file
        """
        stream = io.StringIO()
        self.assertTrue(codec.dump_report({'b': 1, 'a': 2}, stream=stream))
        self.assertLess(stream.getvalue().index('"a"'),
                        stream.getvalue().index('"b"'))
        path = os.path.join(self.tempdir, 'report.json')
        self.assertTrue(codec.dump_report({'a': 1}, path=path))
        with open(path) as f:
            self.assertEqual(json.load(f), {'a': 1})
        self.assertFalse(codec.dump_report(
            {}, path=os.path.join(self.tempdir, 'no', 'such', 'dir.json')))
