import os
import json
import math
import tempfile

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
from django.test import SimpleTestCase

from polyent.exceptions import ArgumentError
from polyent.linalg import PureState
from polyent.policy import NumericPolicy
from polyent import states


class RecipeTest(SimpleTestCase):
    def test_parse(self):
        recipe = states.parse_recipe('gsd3:0.5,0.5,r6,r6,r6')
        self.assertEqual(recipe.family, 'gsd3')
        assert_allclose(recipe.params, [0.5, 0.5] + [1 / math.sqrt(6)] * 3)
        self.assertEqual(states.parse_recipe('w3').params, ())
        self.assertEqual(states.parse_recipe(' haar:2,3 ', seed=4).seed, 4)

    def test_presets(self):
        self.assertEqual(states.parse_recipe('gsd3').params,
                         states.parse_recipe('gsd3:0.5,0.5,r6,r6,r6').params)
        recipe = states.parse_recipe('w4c')
        self.assertEqual(recipe.family, 'w4_weighted')
        self.assertEqual(recipe.params[2], states.R2)
        self.assertEqual(states.parse_recipe('ghz3').params, (3, 2))

    def test_text(self):
        self.assertEqual(states.parse_recipe('w3').text, 'w3')
        self.assertEqual(states.parse_recipe('ghz:4,2').text, 'ghz:4,2')
        self.assertEqual(states.parse_recipe('file:a.json').text,
                         'file:a.json')
        self.assertEqual(states.parse_recipe('b.json').path, 'b.json')

    def test_errors(self):
        with self.assertRaises(ArgumentError):
            states.parse_recipe('bell')
        with self.assertRaises(ArgumentError):
            states.parse_recipe('gsd3:0.5,x')
        with self.assertRaises(ArgumentError):
            states.build(states.parse_recipe('gsd3:0.5,0.5,0.5,0.5,0.5'))
        with self.assertRaises(ArgumentError):
            states.build(states.parse_recipe('gsd3:-0.6,0,0,0.8,0'))
        with self.assertRaises(ArgumentError):
            states.build(states.parse_recipe('w4_weighted:0.5,0.5'))
        with self.assertRaises(ArgumentError):
            states.build(states.parse_recipe('haar:2,1.5'))


class BuildTest(SimpleTestCase):
    def test_gsd3_layout(self):
        psi = states.build(states.parse_recipe('gsd3:1,0,0,0,0'))
        assert_array_equal(psi.amps, [1, 0, 0, 0, 0, 0, 0, 0])

        psi = states.build(states.parse_recipe('gsd3:0,1,0,0,0,1.5'))
        self.assertAlmostEqual(psi.amps[4], np.exp(1.5j), places=12)

    def test_w_states(self):
        psi = states.build(states.parse_recipe('w3'))
        self.assertEqual(psi.dims, (2, 2, 2))
        assert_allclose(np.abs(psi.amps[[4, 2, 1]]), [states.R3] * 3)

        psi = states.build(states.parse_recipe('w4b'))
        self.assertEqual(psi.dims, (2, 2, 2, 2))
        self.assertAlmostEqual(psi.tensor()[0, 1, 0, 0], states.R2)

    def test_ghz_and_product(self):
        psi = states.build(states.parse_recipe('ghz:2,3'))
        self.assertEqual(psi.dims, (3, 3))
        assert_allclose(psi.tensor(), np.eye(3) / math.sqrt(3))

        psi = states.build(states.parse_recipe('product:2,3'))
        self.assertEqual(psi.amps[0], 1)

    def test_haar_seed(self):
        first = states.build(states.parse_recipe('haar:2,2,3', seed=7))
        second = states.build(states.parse_recipe('haar:2,2,3', seed=7))
        self.assertEqual(first.dims, (2, 2, 3))
        assert_array_equal(first.amps, second.amps)

    def test_policy_reaches_every_family(self):
        # a negative norm tolerance rejects any state
        strict = NumericPolicy(norm=-1.0)
        for text in ('haar:2,2', 'w3', 'gsd3', 'ghz3', 'product:2,2'):
            with self.assertRaises(ArgumentError, msg=text):
                states.build(states.parse_recipe(text, seed=1), strict)

    def test_expected_values_empty(self):
        self.assertEqual(states.expected_values(
            states.parse_recipe('haar:2,2')), {})


class StateFileTest(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.directory.name, 'state.json')

    def tearDown(self):
        self.directory.cleanup()

    def write(self, data):
        with open(self.path, 'w', encoding='utf-8') as f:
            f.write(data if isinstance(data, str) else json.dumps(data))

    def test_dump_and_load(self):
        psi = states.build(states.parse_recipe('gsd3:0.5,0.5,r6,r6,r6,0.3'))
        states.dump_state_file(psi, self.path)
        loaded = states.build(states.parse_recipe('file:%s' % self.path))
        self.assertEqual(loaded.dims, psi.dims)
        assert_allclose(loaded.amps, psi.amps, atol=1e-15)

    def test_renormalized_within_tolerance(self):
        self.write({'dims': [2], 'amps': [[0.6, 0], [0, 0.8000001]]})
        psi = states.load_state_file(self.path)
        self.assertIsInstance(psi, PureState)
        self.assertAlmostEqual(np.linalg.norm(psi.amps), 1, places=12)
        self.assertAlmostEqual(psi.amps[1], 0.8j, places=6)

    def test_errors(self):
        self.write({'dims': [2], 'amps': [[1, 0], [1, 0]]})
        with self.assertRaises(ArgumentError):
            states.load_state_file(self.path)

        self.write('{"dims": [2], ')
        with self.assertRaises(ArgumentError):
            states.load_state_file(self.path)

        self.write({'amps': [[1, 0]]})
        with self.assertRaises(ArgumentError):
            states.load_state_file(self.path)

        with self.assertRaises(OSError):
            states.load_state_file(self.path + '.missing')
