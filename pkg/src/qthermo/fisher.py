"""Fisher-information machinery for temperature estimation.

The central objects are a state family ``T -> rho(T)`` and its temperature
derivative.  Derivatives are always taken numerically (validated central
differences), so closed-form families and master-equation families flow
through one code path; analytic derivatives appear only as test oracles.

Quantum Fisher information comes in two equivalent forms:

* the spectral sum ``F = 2 sum_{k,l} |<k| drho |l>|^2 / (lam_k + lam_l)``
  over eigenpairs of rho, valid in any dimension;
* for a single qubit with Bloch vector r and purity P = (1 + |r|^2)/2,

      F = (dP)^2 (1 - |r|^2) / (4 (P - 1)^2) + |dr|^2,

  which is singular at pure states and then routed to the spectral form.

The symmetric logarithmic derivative of a mixed qubit is
``L = c0 I + cx sx + cy sy + cz sz`` with ``c0 = dP / (2 (P - 1))`` and
``c_i = r_i dP / (2 - 2P) + dr_i``; its eigenbasis is an optimal
measurement and ``Tr(rho L^2) = F``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonHermitianInput,
    NonPositiveInput,
    PureStateSingularity,
    SingularOutcome,
    StepTooLarge,
    ZeroVariance,
)
from .linalg import eig_hermitian, hermiticity_defect, pauli

__all__ = [
    "default_step",
    "halving_consistency",
    "d_rho_dT",
    "qfi_spectral",
    "BlochVector",
    "bloch_components",
    "qfi_bloch",
    "qubit_qfi",
    "SLDOperator",
    "sld",
    "cfi_povm",
    "measurement_fi",
    "qsnr",
    "EstimateRecord",
]

#: Spectral-sum terms with eigenvalue sum at or below this are skipped.
EIG_CUTOFF = 1e-12

#: Skipped terms whose squared numerator exceeds this trigger a warning.
NUMERATOR_FLOOR = 1e-24


def default_step(temperature: float) -> float:
    """Central-difference step ``max(1e-5, 1e-4 T)``."""
    return max(1e-5, 1e-4 * temperature)


def _central(state_fn, temperature, h):
    return (np.asarray(state_fn(temperature + h)) - np.asarray(state_fn(temperature - h))) / (2.0 * h)


def halving_consistency(d_h: np.ndarray, d_half: np.ndarray, rel_tol: float = 1e-5) -> None:
    """Require a central difference to agree with its half-step refinement.

    Derivatives below 1e-8 in every entry count as zero (the family is
    temperature independent up to evaluation noise, e.g. a dephased steady
    state, and a relative comparison of noise would be meaningless).  Above
    that floor a relative discrepancy exceeding ``rel_tol`` raises
    :class:`StepTooLarge`.
    """
    scale = max(float(np.max(np.abs(d_half))), float(np.max(np.abs(d_h))))
    if scale < 1e-8:
        return
    rel = float(np.max(np.abs(d_h - d_half))) / max(float(np.max(np.abs(d_half))), 1e-300)
    if rel > rel_tol:
        raise StepTooLarge(
            f"central difference differs from half step by {rel:.3e} relative"
        )


def d_rho_dT(state_fn, temperature: float, h: float | None = None) -> np.ndarray:
    """Central-difference temperature derivative of a matrix-valued family.

    The derivative at step ``h`` is validated against the half-step result
    via :func:`halving_consistency`.
    """
    if h is None:
        h = default_step(temperature)
    if temperature - h <= 0:
        raise NonPositiveInput(f"need T - h > 0, got T={temperature}, h={h}")
    d_h = _central(state_fn, temperature, h)
    d_half = _central(state_fn, temperature, 0.5 * h)
    halving_consistency(d_h, d_half)
    return d_h


def qfi_spectral(rho: np.ndarray, drho: np.ndarray, eig_cutoff: float = EIG_CUTOFF) -> float:
    """Quantum Fisher information from the eigendecomposition of ``rho``.

    Terms with ``lam_k + lam_l <= eig_cutoff`` are dropped; if such a term
    carries a squared numerator above ``NUMERATOR_FLOOR`` a warning is
    emitted, since that signals information sitting on the boundary of the
    state's support where the float representation cannot resolve it.
    """
    drho = np.asarray(drho, dtype=complex)
    defect = hermiticity_defect(drho)
    if defect > 1e-8 * max(1.0, float(np.max(np.abs(drho)))):
        raise NonHermitianInput(f"state derivative has hermiticity defect {defect:.3e}")
    es = eig_hermitian(np.asarray(rho, dtype=complex))
    lam = es.eigenvalues
    m = es.eigenvectors.conj().T @ drho @ es.eigenvectors
    total = 0.0
    dropped = 0.0
    for k in range(len(lam)):
        for l in range(len(lam)):
            s = lam[k] + lam[l]
            num = abs(m[k, l]) ** 2
            if s > eig_cutoff:
                total += 2.0 * num / s
            elif num > NUMERATOR_FLOOR:
                dropped = max(dropped, num)
    if dropped:
        warnings.warn(
            f"spectral QFI dropped a boundary-of-support term (|numerator|^2 = {dropped:.3e})",
            stacklevel=2,
        )
    return float(total)


@dataclass(frozen=True)
class BlochVector:
    """Real components of a Hermitian 2x2 matrix in the Pauli basis (for a
    state: the Bloch vector; for a state derivative: its derivative)."""

    rx: float
    ry: float
    rz: float

    @property
    def norm2(self) -> float:
        return self.rx * self.rx + self.ry * self.ry + self.rz * self.rz

    @property
    def purity(self) -> float:
        return 0.5 * (1.0 + self.norm2)

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])


def bloch_components(mat: np.ndarray) -> BlochVector:
    mat = np.asarray(mat, dtype=complex)
    return BlochVector(
        rx=float(2.0 * mat[0, 1].real),
        ry=float(-2.0 * mat[0, 1].imag),
        rz=float((mat[0, 0] - mat[1, 1]).real),
    )


def qfi_bloch(r: BlochVector, dr: BlochVector) -> float:
    """Bloch-form QFI of a mixed qubit family.

    Raises :class:`PureStateSingularity` when ``|r|^2 > 1 - 1e-9``; callers
    should fall back to :func:`qfi_spectral` (see :func:`qubit_qfi`).
    """
    n2 = r.norm2
    if n2 > 1.0 - 1e-9:
        raise PureStateSingularity(f"|r|^2 = {n2} too close to 1 for the Bloch form")
    dp = float(r.as_array() @ dr.as_array())
    # 4 (P - 1)^2 = (1 - |r|^2)^2
    return dp * dp / (1.0 - n2) + dr.norm2


def qubit_qfi(rho: np.ndarray, drho: np.ndarray) -> float:
    """QFI of a qubit family: Bloch form, spectral fallback at pure states."""
    try:
        return qfi_bloch(bloch_components(rho), bloch_components(drho))
    except PureStateSingularity:
        return qfi_spectral(rho, drho)


@dataclass(frozen=True)
class SLDOperator:
    """Pauli coefficients of the symmetric logarithmic derivative."""

    c0: float
    cx: float
    cy: float
    cz: float

    def matrix(self) -> np.ndarray:
        return (
            self.c0 * np.eye(2, dtype=complex)
            + self.cx * pauli("x")
            + self.cy * pauli("y")
            + self.cz * pauli("z")
        )


def sld(r: BlochVector, dr: BlochVector) -> SLDOperator:
    """Symmetric logarithmic derivative of a mixed qubit family."""
    n2 = r.norm2
    if n2 > 1.0 - 1e-9:
        raise PureStateSingularity(f"|r|^2 = {n2} too close to 1 for the SLD coefficients")
    dp = float(r.as_array() @ dr.as_array())
    u = dp / (1.0 - n2)  # dP / (2 - 2P)
    return SLDOperator(
        c0=-u,
        cx=u * r.rx + dr.rx,
        cy=u * r.ry + dr.ry,
        cz=u * r.rz + dr.rz,
    )


def cfi_povm(probs, dprobs) -> float:
    """Classical Fisher information ``sum (dp_i)^2 / p_i`` of an outcome
    distribution and its parameter derivative.

    Outcomes with both ``p_i`` and ``|dp_i|`` below 1e-14 are skipped; a
    vanishing probability with a non-vanishing derivative raises
    :class:`SingularOutcome`.
    """
    p = np.asarray(probs, dtype=float)
    dp = np.asarray(dprobs, dtype=float)
    if p.shape != dp.shape:
        raise NonPositiveInput("probs and dprobs must have matching shapes")
    if np.any(p < -1e-12):
        raise NonPositiveInput(f"negative probability {p.min()}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise NonPositiveInput(f"probabilities sum to {p.sum()}, not 1")
    if abs(dp.sum()) > 1e-8:
        raise NonPositiveInput(f"probability derivatives sum to {dp.sum()}, not 0")
    total = 0.0
    for pi, dpi in zip(p, dp):
        if pi < 1e-14:
            if abs(dpi) < 1e-14:
                continue
            raise SingularOutcome(
                f"outcome with p = {pi:.3e} but dp/dT = {dpi:.3e}"
            )
        total += dpi * dpi / pi
    return float(total)


def measurement_fi(observable: np.ndarray, rho_fn, temperature: float, h: float | None = None) -> float:
    """Fisher information of a single observable,
    ``(d<X>/dT)^2 / Var(X)``, with the derivative from :func:`d_rho_dT`."""
    x = np.asarray(observable, dtype=complex)
    if hermiticity_defect(x) > 1e-10:
        raise NonHermitianInput("observable must be Hermitian")
    rho = np.asarray(rho_fn(temperature), dtype=complex)
    mean = float(np.trace(rho @ x).real)
    var = float(np.trace(rho @ x @ x).real) - mean * mean
    if var <= 1e-14:
        raise ZeroVariance(f"observable variance {var:.3e} too small")
    drho = d_rho_dT(rho_fn, temperature, h)
    dmean = float(np.trace(drho @ x).real)
    return dmean * dmean / var


def qsnr(temperature: float, fisher: float) -> float:
    """Signal-to-noise ratio ``T^2 F`` of a Fisher information value."""
    if fisher < 0:
        raise NonPositiveInput(f"Fisher information must be >= 0, got {fisher}")
    return temperature * temperature * fisher


@dataclass(frozen=True)
class EstimateRecord:
    """Metrology outputs at one time point.

    ``fi_meas`` is the Fisher information of the concrete measurement used
    by the experiment (a fixed observable or a projective basis); it can
    never exceed ``qfi`` for the same state family.
    """

    t: float
    qfi: float
    fi_meas: float
    qsnr: float
    qfi_per_t: float
    coherence_abs: float

    def __post_init__(self):
        if self.fi_meas > self.qfi + 1e-9:
            raise NonPositiveInput(
                f"measurement FI {self.fi_meas} exceeds QFI {self.qfi}"
            )
