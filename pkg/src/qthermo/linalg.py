"""Dense complex linear algebra for small quantum systems.

Everything in here operates on plain ``numpy`` arrays of fixed small
dimension (2 and 4 for states and operators, 16 for superoperators).  The
column-stacking convention is used throughout: ``vec`` stacks columns, so
``vec(A @ rho @ B) == kron(B.T, A) @ vec(rho)``.

Basis and sign conventions
--------------------------
* ``|0> = (1, 0)``, ``|1> = (0, 1)``; ``sigma_z |0> = +|0>``.
* Tensor products follow ``numpy.kron``: the first factor is the slow index,
  so the two-qubit basis is ordered ``|00>, |01>, |10>, |11>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BadDimension, NonFinite, NonHermitianInput, PositivityViolation

__all__ = [
    "pauli",
    "identity",
    "kron",
    "EigenSystem",
    "eig_hermitian",
    "expm",
    "partial_trace",
    "vec",
    "unvec",
    "dag",
    "choi_matrix",
    "hermiticity_defect",
    "validate_density_matrix",
]

_PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def pauli(which: str) -> np.ndarray:
    """Return a copy of the 2x2 Pauli matrix ``sigma_x``, ``sigma_y`` or
    ``sigma_z`` for ``which`` in ``{"x", "y", "z"}``."""
    try:
        return _PAULI[which].copy()
    except KeyError:
        raise BadDimension(f"unknown Pauli axis {which!r}") from None


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with the first factor on the slow (left) index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dag(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Max entrywise deviation of ``m`` from its own adjoint."""
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors``
    are the matching orthonormal eigenvectors with the phase of the first
    non-negligible component fixed to be real positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(h: np.ndarray, herm_tol: float = 1e-12) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with deterministic phases.

    Raises
    ------
    NonHermitianInput
        If any entry of ``h - h†`` exceeds ``herm_tol``.
    """
    h = np.asarray(h, dtype=complex)
    defect = hermiticity_defect(h)
    if defect > herm_tol:
        raise NonHermitianInput(f"hermiticity defect {defect:.3e} > {herm_tol:.1e}")
    vals, vecs = np.linalg.eigh(0.5 * (h + h.conj().T))
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        k = int(np.argmax(np.abs(col) > 1e-8))
        ph = col[k] / abs(col[k])
        vecs[:, j] = col * ph.conj()
    return EigenSystem(eigenvalues=vals, eigenvectors=vecs)


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling and squaring).

    Raises ``NonFinite`` if the result overflows.
    """
    out = scipy.linalg.expm(np.asarray(m, dtype=complex))
    if not np.all(np.isfinite(out)):
        raise NonFinite("matrix exponential overflowed")
    return out


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Trace out one qubit of a two-qubit operator.

    ``keep=1`` retains the first tensor factor, ``keep=2`` the second.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise BadDimension(f"partial_trace needs a 4x4 matrix, got {rho.shape}")
    r = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("abcb->ac", r)
    if keep == 2:
        return np.einsum("abad->bd", r)
    raise BadDimension(f"keep must be 1 or 2, got {keep!r}")


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise BadDimension(f"vector of length {v.size} is not a stacked square matrix")
    return v.reshape((d, d), order="F")


def choi_matrix(superop: np.ndarray) -> np.ndarray:
    """Choi matrix of the map represented by a column-stacking superoperator.

    With ``S[i + d*j, k + d*l] = <i| Phi(|k><l|) |j>`` the Choi matrix is
    ``C[(k,i),(l,j)] = S[i + d*j, k + d*l]``; the map is completely positive
    iff ``C`` is positive semidefinite.
    """
    superop = np.asarray(superop, dtype=complex)
    d = int(round(np.sqrt(superop.shape[0])))
    if superop.shape != (d * d, d * d):
        raise BadDimension(f"superoperator shape {superop.shape} is not (d^2, d^2)")
    s4 = superop.reshape(d, d, d, d, order="F")  # s4[i, j, k, l]
    return s4.transpose(2, 0, 3, 1).reshape(d * d, d * d)


def validate_density_matrix(
    rho: np.ndarray,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-10,
    eig_floor: float = -1e-10,
) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix.

    Returns ``rho`` unchanged on success; raises ``NonHermitianInput``,
    ``NonFinite`` or ``PositivityViolation`` otherwise.  Positivity is only
    asserted, never repaired: a negative eigenvalue signals a generator bug
    and must surface.
    """
    rho = np.asarray(rho, dtype=complex)
    if not np.all(np.isfinite(rho)):
        raise NonFinite("density matrix has non-finite entries")
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise NonHermitianInput(f"hermiticity defect {defect:.3e} > {herm_tol:.1e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise PositivityViolation(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
    lam_min = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if lam_min < eig_floor:
        raise PositivityViolation(f"minimum eigenvalue {lam_min:.3e} < {eig_floor:.1e}")
    return rho
