import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from polyent.exceptions import ArgumentError, NumericError
from polyent.linalg import (PureState, DensityMatrix, PartitionSpec, kron,
                            tensor, partial_trace, reduce_to, herm_eig,
                            psd_sqrt, clamped_spectrum, purify,
                            haar_random_pure, random_isometry)
from polyent import states


KET0, KET1 = np.array([1, 0]), np.array([0, 1])
PLUS = np.array([1, 1]) / np.sqrt(2)


class DomainTypesTest(SimpleTestCase):
    def test_pure_state_validation(self):
        with self.assertRaises(ArgumentError):
            PureState([1, 1], (2,))
        with self.assertRaises(ArgumentError):
            PureState([1, 0, 0], (2, 2))
        with self.assertRaises(ArgumentError):
            PureState([1, 0], (0, 2))

    def test_pure_state_matrix_and_reorder(self):
        psi = PureState(kron(kron(KET0, KET1), PLUS), (2, 2, 2))
        self.assertEqual(psi.nsub, 3)
        self.assertEqual(psi.matrix(1).shape, (2, 4))
        swapped = psi.reorder((2, 0, 1))
        assert_allclose(swapped.amps, kron(kron(PLUS, KET0), KET1))
        self.assertFalse(psi.amps.flags.writeable)

    def test_density_matrix_validation(self):
        with self.assertRaises(ArgumentError):
            DensityMatrix([[1, 1], [0, 0]], (2,))
        with self.assertRaises(ArgumentError):
            DensityMatrix(np.eye(2), (2,))
        with self.assertRaises(ArgumentError):
            DensityMatrix(np.diag([1.5, -0.5]), (2,))
        block = DensityMatrix(np.diag([0.25, 0]), (2,), normalized=False)
        self.assertEqual(block.rank(), 1)

    def test_partition_from_cut(self):
        part = PartitionSpec.from_cut('A|BC', 3)
        self.assertEqual((part.focus, part.partners), (0, (1, 2)))
        part = PartitionSpec.from_cut('b|ca', 3)
        self.assertEqual((part.focus, part.partners), (1, (2, 0)))
        self.assertEqual(part.cut, 'B|CA')
        self.assertEqual(part.labels, ['C', 'A'])
        self.assertTrue(part.covers(3))
        self.assertFalse(PartitionSpec.from_cut('A|B', 3).covers(3))

    def test_partition_errors(self):
        for cut in ('ABC', 'AB|C', 'A|AB', 'A|', 'A|B1'):
            with self.assertRaises(ArgumentError, msg=cut):
                PartitionSpec.from_cut(cut, 3)
        with self.assertRaises(ArgumentError):
            PartitionSpec.from_cut('A|BD', 3)
        with self.assertRaises(ArgumentError):
            PartitionSpec(0, (1, 1))


class OperationsTest(SimpleTestCase):
    def test_kron_and_tensor(self):
        assert_array_equal(kron(KET0, KET1), [0, 1, 0, 0])
        psi = tensor(PureState(KET0, (2,)), PureState(PLUS, (2,)))
        self.assertEqual(psi.dims, (2, 2))
        assert_allclose(psi.amps, [PLUS[0], PLUS[1], 0, 0])

        mixed = tensor(DensityMatrix(np.eye(2) / 2, (2,)),
                       PureState(KET1, (2,)))
        assert_allclose(mixed.mat, np.diag([0, 0.5, 0, 0.5]))

    def test_kron_and_tensor_associate(self):
        rng = np.random.default_rng(17)
        a, b, c = [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                   for n in (2, 3, 2)]
        assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)),
                        rtol=0, atol=1e-12)

        x, y, z = [haar_random_pure((n,), (17, n)) for n in (2, 3, 4)]
        left = tensor(tensor(x, y), z)
        right = tensor(x, tensor(y, z))
        self.assertEqual(left.dims, (2, 3, 4))
        self.assertEqual(right.dims, left.dims)
        assert_allclose(left.amps, right.amps, rtol=0, atol=1e-12)
        assert_allclose(tensor(x, y, z).amps, left.amps, rtol=0, atol=1e-12)

    def test_partial_trace_w3(self):
        psi = states.build(states.parse_recipe('w3'))
        rho_a = partial_trace(psi, [0])
        assert_allclose(rho_a.mat, np.diag([2 / 3, 1 / 3]), atol=1e-12)

        rho_bc = partial_trace(psi.density(), [1, 2])
        self.assertEqual(rho_bc.dims, (2, 2))
        assert_allclose(np.trace(rho_bc.mat), 1, atol=1e-12)

    def test_reduce_to_order(self):
        psi = PureState(kron(kron(KET0, KET1), PLUS), (2, 2, 2))
        rho_ca = reduce_to(psi, (2, 0))
        expected = np.kron(np.outer(PLUS, PLUS), np.outer(KET0, KET0))
        assert_allclose(rho_ca.mat, expected, atol=1e-12)
        # mixed input gives the same marginal
        assert_allclose(reduce_to(psi.density(), (2, 0)).mat, expected,
                        atol=1e-12)

    def test_reduce_to_errors(self):
        psi = haar_random_pure((2, 2, 2), 1)
        with self.assertRaises(ArgumentError):
            reduce_to(psi, (0, 0))
        with self.assertRaises(ArgumentError):
            reduce_to(psi, (0, 3))
        with self.assertRaises(ArgumentError):
            psi.reorder((0, 1))

    def test_herm_eig(self):
        values, vectors = herm_eig(np.diag([1, 2, 3]))
        assert_allclose(values, [3, 2, 1])

        pauli_x = np.array([[0, 1], [1, 0]])
        values, vectors = herm_eig(pauli_x)
        assert_allclose(values, [1, -1], atol=1e-12)
        assert_allclose(abs(vectors[:, 0] @ PLUS), 1, atol=1e-12)
        assert_allclose((vectors * values) @ vectors.conj().T, pauli_x,
                        atol=1e-9)

        with self.assertRaises(ArgumentError):
            herm_eig(np.array([[0, 1], [0, 0]]))
        with self.assertRaises(ArgumentError):
            herm_eig(np.ones((2, 3)))

    def test_psd_sqrt(self):
        rho = haar_random_pure((2, 3), 5).density().grouped(1)
        root = psd_sqrt(rho.mat)
        assert_allclose(root @ root, rho.mat, atol=1e-9)

        with self.assertRaises(NumericError):
            psd_sqrt(np.diag([1, -0.1]))
        # tiny negative eigenvalues are clamped
        assert_allclose(psd_sqrt(np.diag([1, -1e-9])), np.diag([1, 0]),
                        atol=1e-12)

    def test_clamped_spectrum(self):
        assert_allclose(clamped_spectrum(np.diag([0.5, 1e-14, -1e-14])),
                        [0.5, 0, 0], atol=1e-15)

    def test_purify(self):
        rho = reduce_to(haar_random_pure((2, 2, 2), 3), (0, 1))
        pure = purify(rho)
        self.assertEqual(pure.dims, (4, 2))
        assert_allclose(reduce_to(pure, [0]).mat, rho.mat, atol=1e-10)


class HaarTest(SimpleTestCase):
    def test_deterministic(self):
        assert_array_equal(haar_random_pure((2, 3), 7).amps,
                           haar_random_pure((2, 3), 7).amps)
        assert_array_equal(haar_random_pure((2, 2), (0, 4)).amps,
                           haar_random_pure((2, 2), [0, 4]).amps)
        self.assertFalse(np.allclose(haar_random_pure((2, 2), (0, 4)).amps,
                                     haar_random_pure((2, 2), (0, 5)).amps))

    def test_mean_purity(self):
        purities = []
        for index in range(2000):
            rho = reduce_to(haar_random_pure((2, 2), (11, index)), [0])
            purities.append(np.trace(rho.mat @ rho.mat).real)
        # (d_a + d_b) / (d_a d_b + 1)
        self.assertAlmostEqual(np.mean(purities), 4 / 5, delta=0.02)

    def test_random_isometry(self):
        v = random_isometry(4, 2, np.random.default_rng(0))
        assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1),
           st.lists(st.integers(min_value=2, max_value=3), min_size=2,
                    max_size=3))
    def test_marginals_are_states(self, seed, dims):
        psi = haar_random_pure(dims, seed)
        for keep in range(len(dims)):
            rho = reduce_to(psi, [keep])
            self.assertAlmostEqual(np.trace(rho.mat).real, 1, places=10)
            self.assertGreaterEqual(herm_eig(rho.mat)[0].min(), -1e-12)
