import numpy as np
import pytest

from qthermo.errors import BadDimension, NonHermitianInput, PositivityViolation
from qthermo.linalg import (
    choi_matrix,
    eig_hermitian,
    expm,
    identity,
    kron,
    partial_trace,
    pauli,
    unvec,
    validate_density_matrix,
    vec,
)
from conftest import random_hermitian, random_density


class TestPauli:
    def test_sigma_z_diagonal(self):
        assert np.array_equal(pauli("z"), np.diag([1.0, -1.0]))

    @pytest.mark.parametrize("axis", ["x", "y", "z"])
    def test_involution(self, axis):
        s = pauli(axis)
        assert np.allclose(s @ s, identity(2))

    def test_su2_commutator(self):
        sx, sy, sz = pauli("x"), pauli("y"), pauli("z")
        assert np.allclose(sx @ sy - sy @ sx, 2j * sz)

    def test_unknown_axis(self):
        with pytest.raises(BadDimension):
            pauli("w")


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(identity(2), identity(2)), identity(4))

    def test_sign_convention(self):
        # z (x) I has eigenvalue +1 exactly when the first factor is |0>
        zi = kron(pauli("z"), identity(2))
        expected = {0: 1.0, 1: 1.0, 2: -1.0, 3: -1.0}
        for idx, sign in expected.items():
            e = np.zeros(4)
            e[idx] = 1.0
            assert np.allclose(zi @ e, sign * e)

    def test_involution(self):
        xx = kron(pauli("x"), pauli("x"))
        assert np.allclose(xx @ xx, identity(4))

    def test_mixed_product(self, rng):
        a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
        c, d = random_hermitian(rng, 2), random_hermitian(rng, 2)
        assert np.allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d))

    def test_associativity(self, rng):
        for _ in range(20):
            a, b, c = (random_hermitian(rng, 2) for _ in range(3))
            left = kron(kron(a, b), c)
            right = kron(a, kron(b, c))
            assert np.max(np.abs(left - right)) < 1e-12


class TestEigHermitian:
    def test_diag(self):
        es = eig_hermitian(np.diag([1.0, -1.0]).astype(complex))
        assert np.allclose(es.eigenvalues, [-1.0, 1.0])

    def test_probe_ancilla_spectrum(self):
        # resonant pair at coupling 0.8: singlet/triplet at -+kappa, ends at -+1
        from qthermo.models import BathSpec, ProbeAncillaModel, hamiltonian

        model = ProbeAncillaModel(1.0, 1.0, 0.8, BathSpec(0.01, 10.0, 0.4), np.pi / 2)
        es = eig_hermitian(hamiltonian(model))
        assert np.allclose(es.eigenvalues, [-1.0, -0.8, 0.8, 1.0], atol=1e-12)

    def test_sigma_x_eigensystem(self):
        es = eig_hermitian(pauli("x"))
        assert np.allclose(es.eigenvalues, [-1.0, 1.0])
        s = 1.0 / np.sqrt(2.0)
        assert np.allclose(np.abs(es.eigenvectors), [[s, s], [s, s]])

    def test_reconstruction_and_orthonormality(self, rng):
        for _ in range(200):
            h = random_hermitian(rng, 4)
            es = eig_hermitian(h)
            assert np.max(np.abs(es.reconstruct() - h)) < 1e-10
            gram = es.eigenvectors.conj().T @ es.eigenvectors
            assert np.max(np.abs(gram - identity(4))) < 1e-10

    def test_phase_determinism(self, rng):
        h = random_hermitian(rng, 4)
        a = eig_hermitian(h)
        b = eig_hermitian(h.copy())
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        for j in range(4):
            col = a.eigenvectors[:, j]
            first = col[np.argmax(np.abs(col) > 1e-8)]
            assert first.real > 0 and abs(first.imag) < 1e-12

    def test_rejects_non_hermitian(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(NonHermitianInput):
            eig_hermitian(m)


class TestExpm:
    def test_zero(self):
        assert np.allclose(expm(np.zeros((4, 4))), identity(4))

    def test_diagonal_phase(self):
        out = expm(1j * np.pi / 2 * pauli("z"))
        assert np.allclose(out, np.diag([1j, -1j]))

    def test_inverse_pair(self, rng):
        for _ in range(25):
            a = random_hermitian(rng, 4, scale=5.0 / 4.0)
            assert np.max(np.abs(expm(a) @ expm(-a) - identity(4))) < 1e-10

    def test_unitary_for_anti_hermitian(self, rng):
        h = random_hermitian(rng, 4)
        u = expm(1j * h)
        assert np.max(np.abs(u @ u.conj().T - identity(4))) < 1e-10


class TestPartialTrace:
    def test_product_state(self, rng):
        rho_a, rho_b = random_density(rng, 2), random_density(rng, 2)
        assert np.allclose(partial_trace(kron(rho_a, rho_b), keep=1), rho_a)
        assert np.allclose(partial_trace(kron(rho_a, rho_b), keep=2), rho_b)

    def test_bell_state(self):
        psi = np.zeros(4, dtype=complex)
        psi[1] = psi[2] = 1.0 / np.sqrt(2.0)
        rho = np.outer(psi, psi.conj())
        assert np.allclose(partial_trace(rho, keep=1), identity(2) / 2)

    def test_trace_and_hermiticity_preserved(self, rng):
        for _ in range(20):
            rho = random_density(rng, 4)
            red = partial_trace(rho, keep=1)
            assert abs(np.trace(red) - np.trace(rho)) < 1e-12
            assert np.max(np.abs(red - red.conj().T)) < 1e-13

    def test_linear(self, rng):
        a, b = random_density(rng, 4), random_density(rng, 4)
        lhs = partial_trace(0.3 * a + 0.7 * b, keep=2)
        rhs = 0.3 * partial_trace(a, keep=2) + 0.7 * partial_trace(b, keep=2)
        assert np.allclose(lhs, rhs)

    def test_bad_inputs(self):
        with pytest.raises(BadDimension):
            partial_trace(identity(2), keep=1)
        with pytest.raises(BadDimension):
            partial_trace(identity(4), keep=3)


class TestVecChoi:
    def test_vec_roundtrip(self, rng):
        rho = random_density(rng, 4)
        assert np.array_equal(unvec(vec(rho)), rho)

    def test_vec_convention(self, rng):
        a, b, rho = (random_hermitian(rng, 2) for _ in range(3))
        assert np.allclose(vec(a @ rho @ b), kron(b.T, a) @ vec(rho))

    def test_choi_of_unitary_is_rank_one(self):
        u = expm(1j * 0.7 * pauli("x"))
        s = kron(u.conj(), u)  # rho -> u rho u†
        lam = np.linalg.eigvalsh(choi_matrix(s))
        assert lam[-1] == pytest.approx(2.0, abs=1e-10)
        assert np.max(np.abs(lam[:-1])) < 1e-10

    def test_choi_detects_non_cp(self):
        # the transpose map is positive but not completely positive
        d = 2
        s = np.zeros((4, 4), dtype=complex)
        for k in range(d):
            for l in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[k, l] = 1.0
                s[:, k + d * l] = vec(e.T)
        lam = np.linalg.eigvalsh(choi_matrix(s))
        assert lam[0] < -0.5


class TestValidateDensity:
    def test_accepts_valid(self, rng):
        validate_density_matrix(random_density(rng, 4))

    def test_rejects_trace(self):
        with pytest.raises(PositivityViolation):
            validate_density_matrix(1.5 * identity(2) / 2)

    def test_rejects_negative_eigenvalue(self):
        bad = np.diag([1.2, -0.2]).astype(complex)
        with pytest.raises(PositivityViolation):
            validate_density_matrix(bad)

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
        with pytest.raises(NonHermitianInput):
            validate_density_matrix(bad)
