import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from purimap import linalg
from purimap.errors import DimensionMismatchError, InvalidInputError
from purimap.states import random_unitary


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (z + z.conj().T) / 2


def random_psd(dim, seed):
    h = random_hermitian(dim, seed)
    return h @ h.conj().T


class TestHermitianEig:
    def test_identity(self):
        eig = linalg.hermitian_eig(np.eye(2))
        assert np.allclose(eig.eigenvalues, [1.0, 1.0])

    def test_diagonal(self):
        eig = linalg.hermitian_eig(np.diag([3.0, 1.0]))
        assert np.allclose(eig.eigenvalues, [3.0, 1.0])
        # eigenvectors are e1, e2 up to phase
        assert np.isclose(abs(eig.eigenvectors[0, 0]), 1.0)
        assert np.isclose(abs(eig.eigenvectors[1, 1]), 1.0)

    def test_reconstruction_oracle(self):
        m = random_hermitian(6, seed=0)
        eig = linalg.hermitian_eig(m)
        rebuilt = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
        assert np.linalg.norm(rebuilt - m) <= 1e-10

    def test_descending_order(self):
        eig = linalg.hermitian_eig(random_hermitian(5, seed=3))
        assert np.all(np.diff(eig.eigenvalues) <= 0)

    def test_orthonormal_eigenvectors(self):
        eig = linalg.hermitian_eig(random_hermitian(5, seed=4))
        v = eig.eigenvectors
        assert np.linalg.norm(v.conj().T @ v - np.eye(5)) <= 1e-10

    def test_rejects_non_square(self):
        with pytest.raises(InvalidInputError):
            linalg.hermitian_eig(np.ones((2, 3)))

    def test_rejects_non_hermitian(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(InvalidInputError):
            linalg.hermitian_eig(m)

    @given(seed=st.integers(0, 10_000), dim=st.integers(2, 16))
    def test_reconstruction_property(self, seed, dim):
        m = random_hermitian(dim, seed)
        eig = linalg.hermitian_eig(m)
        rebuilt = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
        assert np.linalg.norm(rebuilt - m) <= 1e-10 * max(1.0, np.linalg.norm(m))


class TestSvd:
    def test_zero_matrix(self):
        out = linalg.svd(np.zeros((3, 3)))
        assert np.allclose(out.singular_values, 0.0)

    def test_unitary_has_unit_singular_values(self):
        out = linalg.svd(random_unitary(3, seed=1))
        assert np.allclose(out.singular_values, 1.0)

    def test_reconstruction_oracle(self):
        rng = np.random.default_rng(7)
        m = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        out = linalg.svd(m)
        rebuilt = (out.u * out.singular_values) @ out.vh
        assert np.linalg.norm(rebuilt - m) <= 1e-10
        assert np.all(out.singular_values >= 0)

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            linalg.svd(np.array([[np.nan, 0.0], [0.0, 1.0]]))


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(linalg.psd_sqrt(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(linalg.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    def test_squaring_oracle(self):
        m = random_psd(4, seed=11)
        root = linalg.psd_sqrt(m)
        assert np.linalg.norm(root @ root - m) <= 1e-9 * max(1.0, np.linalg.norm(m))
        assert np.linalg.norm(root - root.conj().T) <= 1e-10

    def test_clamps_tiny_negative_eigenvalues(self):
        m = np.diag([1.0, -1e-10])
        root = linalg.psd_sqrt(m)
        assert np.allclose(root, np.diag([1.0, 0.0]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidInputError):
            linalg.psd_sqrt(np.diag([1.0, -1e-6]))

    @given(seed=st.integers(0, 10_000), dim=st.integers(2, 8))
    def test_squaring_property(self, seed, dim):
        m = random_psd(dim, seed)
        root = linalg.psd_sqrt(m)
        assert np.linalg.norm(root @ root - m) <= 1e-9 * max(1.0, np.linalg.norm(m))


class TestTraceNorm:
    def test_identity(self):
        for d in (2, 5):
            assert np.isclose(linalg.trace_norm(np.eye(d)), d)

    def test_sign_matrix(self):
        assert np.isclose(linalg.trace_norm(np.diag([1.0, -1.0])), 2.0)

    def test_hermitian_eigenvalue_oracle(self):
        m = random_hermitian(6, seed=2)
        expected = np.abs(np.linalg.eigvalsh(m)).sum()
        assert abs(linalg.trace_norm(m) - expected) <= 1e-10

    @given(seed=st.integers(0, 10_000))
    def test_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        u = random_unitary(4, rng)
        v = random_unitary(4, rng)
        base = linalg.trace_norm(m)
        assert abs(linalg.trace_norm(u @ m @ v) - base) <= 1e-9 * max(1.0, base)


class TestKron:
    def test_identity(self):
        assert np.allclose(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_projectors(self):
        p = np.diag([1.0, 0.0])
        assert np.allclose(linalg.kron(p, p), np.diag([1.0, 0.0, 0.0, 0.0]))

    def test_index_formula_oracle(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        out = linalg.kron(a, b)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        assert np.isclose(out[2 * i + k, 2 * j + l], a[i, j] * b[k, l])


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(8)
        rho = random_psd(2, seed=8)
        sigma = random_psd(3, seed=9)
        m = np.kron(rho, sigma)
        assert np.allclose(
            linalg.partial_trace(m, (2, 3), keep="A"), rho * np.trace(sigma)
        )
        assert np.allclose(
            linalg.partial_trace(m, (2, 3), keep="B"), sigma * np.trace(rho)
        )

    def test_bell_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / np.sqrt(2)
        proj = np.outer(bell, bell.conj())
        assert np.allclose(linalg.partial_trace(proj, (2, 2), keep="A"), np.eye(2) / 2)

    def test_index_summation_oracle(self):
        m = random_psd(4, seed=13)
        got = linalg.partial_trace(m, (2, 2), keep="A")
        expected = np.zeros((2, 2), dtype=complex)
        for a in range(2):
            for c in range(2):
                for b in range(2):
                    expected[a, c] += m[a * 2 + b, c * 2 + b]
        assert np.linalg.norm(got - expected) <= 1e-12

    def test_trace_preserved(self):
        m = random_psd(6, seed=14)
        reduced = linalg.partial_trace(m, (2, 3), keep="B")
        assert abs(np.trace(reduced) - np.trace(m)) <= 1e-12 * max(1.0, abs(np.trace(m)))

    def test_rejects_bad_dims(self):
        with pytest.raises(DimensionMismatchError):
            linalg.partial_trace(np.eye(4), (2, 3), keep="A")

    def test_rejects_bad_keep(self):
        with pytest.raises(InvalidInputError):
            linalg.partial_trace(np.eye(4), (2, 2), keep="C")


class TestRangeBasis:
    def test_pure_projector(self):
        v = np.array([1.0, 1j]) / np.sqrt(2)
        basis = linalg.range_basis(np.outer(v, v.conj()))
        assert basis.shape == (2, 1)
        assert np.isclose(abs(np.vdot(basis[:, 0], v)), 1.0)

    def test_full_rank(self):
        basis = linalg.range_basis(np.eye(3) / 3)
        assert basis.shape == (3, 3)

    def test_projector_oracle(self):
        # rank-2 state in dim 4: projector onto the returned span must
        # reproduce the support projector
        rng = np.random.default_rng(21)
        u = random_unitary(4, rng)[:, :2]
        m = (u * [0.7, 0.3]) @ u.conj().T
        basis = linalg.range_basis(m)
        assert basis.shape == (4, 2)
        p = basis @ basis.conj().T
        assert np.linalg.norm(p @ m @ p - m) <= 1e-9
        assert np.linalg.norm(p - u @ u.conj().T) <= 1e-9

    def test_orthonormal_columns(self):
        m = random_psd(5, seed=22)
        basis = linalg.range_basis(m)
        k = basis.shape[1]
        assert np.linalg.norm(basis.conj().T @ basis - np.eye(k)) <= 1e-10
