import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from switchsim.errors import DimensionMismatchError
from switchsim.linalg import (
    DensityOperator,
    basis_ket,
    eig_hermitian,
    max_entangled_ket,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    tensor,
    von_neumann_entropy,
)
from switchsim.channels import haar_unitary

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(d, rng):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (m + m.conj().T) / 2


class TestTensor:
    def test_identity(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_projectors(self):
        p0 = np.outer(basis_ket(2, 0), basis_ket(2, 0).conj())
        p1 = np.outer(basis_ket(2, 1), basis_ket(2, 1).conj())
        got = tensor(p0, p1)
        want = np.zeros((4, 4))
        want[1, 1] = 1.0
        assert np.array_equal(got, want)

    def test_x_tensor_z_hand_expansion(self):
        # direct 4x4 expansion, first factor supplying the block index
        want = np.array(
            [
                [0, 0, 1, 0],
                [0, 0, 0, -1],
                [1, 0, 0, 0],
                [0, -1, 0, 0],
            ],
            dtype=complex,
        )
        assert np.array_equal(tensor(X, Z), want)
        # tensor-then-multiply vs multiply-then-tensor on commuting factors
        assert np.allclose(tensor(X, np.eye(2)) @ tensor(np.eye(2), Z), want, atol=0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_associative(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3))
        left = tensor(tensor(a, b), c)
        right = tensor(a, tensor(b, c))
        assert np.max(np.abs(left - right)) <= 1e-14


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(0)
        rho = random_hermitian(2, rng)
        sigma = random_hermitian(3, rng)
        sigma = sigma / np.trace(sigma)
        got = partial_trace(tensor(rho, sigma), (2, 3), keep=0)
        assert np.allclose(got, rho, atol=1e-12)

    def test_max_entangled_marginals(self):
        phi = max_entangled_ket(2)
        rho = np.outer(phi, phi.conj())
        for keep in (0, 1):
            assert np.allclose(partial_trace(rho, (2, 2), keep), np.eye(2) / 2, atol=1e-14)

    def test_trace_preserved_against_index_sum_oracle(self):
        rng = np.random.default_rng(1)
        m = random_hermitian(6, rng)
        got = partial_trace(m, (2, 3), keep=0)
        # independent oracle: explicit index sums
        t = m.reshape(2, 3, 2, 3)
        want = np.zeros((2, 2), dtype=complex)
        for a in range(2):
            for b in range(2):
                for k in range(3):
                    want[a, b] += t[a, k, b, k]
        assert np.allclose(got, want, atol=1e-14)
        assert abs(np.trace(got) - np.trace(m)) <= 1e-12

    def test_tensor_factor_rule(self):
        rng = np.random.default_rng(2)
        a = random_hermitian(3, rng)
        b = random_hermitian(2, rng)
        got = partial_trace(tensor(a, b), (3, 2), keep=0)
        assert np.allclose(got, a * np.trace(b), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace(np.eye(4), (2, 3), keep=0)


class TestPartialTranspose:
    def test_involution(self):
        rng = np.random.default_rng(3)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        once = partial_transpose(m, (2, 3), 1)
        assert np.array_equal(partial_transpose(once, (2, 3), 1), m)

    def test_max_entangled_min_eigenvalue(self):
        phi = max_entangled_ket(2)
        pt = partial_transpose(np.outer(phi, phi.conj()), (2, 2), 0)
        w = np.linalg.eigvalsh(pt)
        assert abs(w[0] - (-0.5)) <= 1e-12

    def test_product_state_stays_psd(self):
        rng = np.random.default_rng(4)
        for sub in (0, 1):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            rho = tensor(a @ a.conj().T, b @ b.conj().T)
            pt = partial_transpose(rho, (2, 3), sub)
            assert np.linalg.eigvalsh(pt)[0] >= -1e-12

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_preserves_trace_and_hermiticity(self, seed):
        rng = np.random.default_rng(seed)
        m = random_hermitian(6, rng)
        pt = partial_transpose(m, (3, 2), 0)
        assert abs(np.trace(pt) - np.trace(m)) <= 1e-12
        assert np.max(np.abs(pt - pt.conj().T)) <= 1e-12

    def test_bad_subsystem_index(self):
        with pytest.raises(DimensionMismatchError):
            partial_transpose(np.eye(6), (2, 3), 2)


class TestEigHermitian:
    def test_pauli_z(self):
        w, _ = eig_hermitian(Z)
        assert np.allclose(w, [-1.0, 1.0], atol=0)

    def test_maximally_mixed(self):
        w, _ = eig_hermitian(maximally_mixed(4))
        assert np.allclose(w, 0.25, atol=1e-15)

    def test_trace_identity(self):
        rng = np.random.default_rng(5)
        m = random_hermitian(6, rng)
        w, v = eig_hermitian(m)
        assert abs(w.sum() - np.trace(m).real) <= 1e-10
        assert np.linalg.norm(m - (v * w) @ v.conj().T) <= 1e-9 * np.linalg.norm(m)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


class TestEntropy:
    def test_pure_state(self):
        assert von_neumann_entropy(np.outer(basis_ket(3, 1), basis_ket(3, 1))) == 0.0

    def test_maximally_mixed(self):
        for d in (2, 3, 4):
            assert abs(von_neumann_entropy(maximally_mixed(d)) - np.log2(d)) <= 1e-12

    def test_scalar_formula(self):
        got = von_neumann_entropy(np.diag([0.75, 0.25]).astype(complex))
        assert abs(got - 0.8112781244591328) <= 1e-12

    def test_base_argument(self):
        rho = maximally_mixed(4)
        assert abs(von_neumann_entropy(rho, base=4.0) - 1.0) <= 1e-12
        with pytest.raises(ValueError):
            von_neumann_entropy(rho, base=1.0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 5))
    def test_unitary_invariance(self, seed, d):
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        u = haar_unitary(d, rng)
        s1 = von_neumann_entropy(rho)
        s2 = von_neumann_entropy(u @ rho @ u.conj().T)
        assert abs(s1 - s2) <= 1e-10


class TestDensityOperator:
    def test_accepts_valid(self):
        rho = DensityOperator(maximally_mixed(4), (2, 2))
        assert rho.dim == 4
        assert not rho.matrix.flags.writeable

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            DensityOperator(np.array([[0.5, 0.5], [0.0, 0.5]]), (2,))

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityOperator(np.eye(2, dtype=complex), (2,))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValueError):
            DensityOperator(np.diag([1.5, -0.5]).astype(complex), (2,))

    def test_from_pure(self):
        rho = DensityOperator.from_pure([1.0, 1.0])
        assert np.allclose(rho.matrix, 0.5 * np.ones((2, 2)), atol=1e-15)
