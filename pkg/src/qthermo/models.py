"""Physical scenarios: probe qubits, coupling operators, baths, initial states.

All frequencies and energies are expressed in units of the qubit transition
frequency (set to 1 by default), with hbar = k_B = 1.  Temperatures are in the
same units.

Four scenarios are covered:

* a probe qubit dephasing directly in an Ohmic bath,
* a probe qubit shielded from the bath by an ancilla qubit that dephases,
* two coupled resonant qubits in independent local baths,
* two coupled resonant qubits sharing one common bath.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import identity, kron, pauli

__all__ = [
    "BathSpec",
    "DirectProbeModel",
    "ProbeAncillaModel",
    "LocalBaths",
    "CommonBath",
    "TwoQubitModel",
    "hamiltonian",
    "coupling_operators",
    "initial_state",
]


@dataclass(frozen=True)
class BathSpec:
    """Ohmic bath: spectral density J(w) = eta * w * exp(-w / cutoff) at
    temperature ``temperature``."""

    eta: float
    cutoff: float
    temperature: float

    def __post_init__(self):
        if self.eta < 0:
            raise ValidationError("eta", "must be >= 0")
        if self.cutoff <= 0:
            raise ValidationError("cutoff", "must be > 0")
        if self.temperature <= 0:
            raise ValidationError("temperature", "must be > 0")

    def with_temperature(self, temperature: float) -> "BathSpec":
        return BathSpec(self.eta, self.cutoff, temperature)


@dataclass(frozen=True)
class DirectProbeModel:
    """Single qubit coupled to the bath through sigma_z; prepared in
    ``(|0> + |1>)/sqrt(2)``, the preparation that maximizes the dephasing
    signal."""

    omega_p: float
    bath: BathSpec

    def __post_init__(self):
        if self.omega_p <= 0:
            raise ValidationError("omega_p", "must be > 0")


@dataclass(frozen=True)
class ProbeAncillaModel:
    """Probe qubit coupled only to an ancilla qubit; the ancilla dephases in
    the bath through its own sigma_z.

    The probe starts in its excited level ``|1>``; the ancilla starts in
    ``cos(theta/2)|0> + sin(theta/2)|1>``.  The probe is the first tensor
    factor.
    """

    omega_p: float
    omega_a: float
    kappa: float
    bath: BathSpec
    theta: float

    def __post_init__(self):
        if self.omega_p <= 0 or self.omega_a <= 0:
            raise ValidationError("omega", "transition frequencies must be > 0")
        if self.kappa < 0:
            raise ValidationError("kappa", "must be >= 0")
        if not 0.0 <= self.theta <= np.pi:
            raise ValidationError("theta", "must lie in [0, pi]")


@dataclass(frozen=True)
class LocalBaths:
    """Each qubit sees its own independent reservoir."""

    bath1: BathSpec
    bath2: BathSpec


@dataclass(frozen=True)
class CommonBath:
    """One shared reservoir with per-qubit coupling strengths eta1, eta2.

    A single physical bath fixes one temperature and one cutoff; only the
    coupling of each qubit to it may differ.  The shared bath adds cross
    dissipators with geometric-mean spectral density sqrt(J1 * J2).
    """

    eta1: float
    eta2: float
    cutoff: float
    temperature: float

    def bath(self, index: int) -> BathSpec:
        eta = {1: self.eta1, 2: self.eta2}[index]
        return BathSpec(eta, self.cutoff, self.temperature)

    def cross_bath(self) -> BathSpec:
        # sqrt(J1 J2) for a shared cutoff is Ohmic with eta = sqrt(eta1 eta2)
        return BathSpec(float(np.sqrt(self.eta1 * self.eta2)), self.cutoff, self.temperature)


@dataclass(frozen=True)
class TwoQubitModel:
    """Two resonant qubits with an exchange (XX+YY) coupling of strength
    ``kappa``, prepared in ``cos(theta/2)|01> + sin(theta/2)|10>``."""

    omega0: float
    kappa: float
    bath_config: "LocalBaths | CommonBath"
    theta: float

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValidationError("omega0", "must be > 0")
        if self.kappa < 0:
            raise ValidationError("kappa", "must be >= 0")
        if not 0.0 <= self.theta <= np.pi:
            raise ValidationError("theta", "must lie in [0, pi]")
        if isinstance(self.bath_config, LocalBaths):
            t1 = self.bath_config.bath1.temperature
            t2 = self.bath_config.bath2.temperature
            if abs(t1 - t2) > 1e-12:
                warnings.warn(
                    "local baths have different temperatures "
                    f"(T1={t1}, T2={t2}); thermometry runs assume a single T",
                    stacklevel=2,
                )


Model = DirectProbeModel | ProbeAncillaModel | TwoQubitModel


def _exchange(kappa: float) -> np.ndarray:
    sx, sy = pauli("x"), pauli("y")
    return 0.5 * kappa * (kron(sx, sx) + kron(sy, sy))


def hamiltonian(model: Model) -> np.ndarray:
    """System Hamiltonian of a model (2x2 or 4x4, exactly Hermitian)."""
    sz, i2 = pauli("z"), identity(2)
    if isinstance(model, DirectProbeModel):
        return 0.5 * model.omega_p * sz
    if isinstance(model, ProbeAncillaModel):
        return (
            0.5 * model.omega_p * kron(sz, i2)
            + 0.5 * model.omega_a * kron(i2, sz)
            + _exchange(model.kappa)
        )
    if isinstance(model, TwoQubitModel):
        return (
            0.5 * model.omega0 * (kron(sz, i2) + kron(i2, sz))
            + _exchange(model.kappa)
        )
    raise TypeError(f"unknown model type {type(model).__name__}")


def coupling_operators(model: Model) -> list[tuple[np.ndarray, BathSpec]]:
    """Bath coupling operators with the bath each of them talks to.

    The shared-bath cross terms are not listed here; they are derived from
    ``isinstance(model.bath_config, CommonBath)`` by the master-equation
    builder.
    """
    sz, i2 = pauli("z"), identity(2)
    if isinstance(model, DirectProbeModel):
        return [(sz, model.bath)]
    if isinstance(model, ProbeAncillaModel):
        return [(kron(i2, sz), model.bath)]
    if isinstance(model, TwoQubitModel):
        cfg = model.bath_config
        if isinstance(cfg, LocalBaths):
            return [(kron(sz, i2), cfg.bath1), (kron(i2, sz), cfg.bath2)]
        if isinstance(cfg, CommonBath):
            return [(kron(sz, i2), cfg.bath(1)), (kron(i2, sz), cfg.bath(2))]
    raise TypeError(f"unknown model type {type(model).__name__}")


def initial_state(model: Model) -> np.ndarray:
    """Pure initial density matrix of a model."""
    if isinstance(model, DirectProbeModel):
        psi = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
    elif isinstance(model, ProbeAncillaModel):
        # |1>_P (cos(theta/2)|0> + sin(theta/2)|1>)_A
        psi = np.zeros(4, dtype=complex)
        psi[2] = np.cos(model.theta / 2.0)
        psi[3] = np.sin(model.theta / 2.0)
    elif isinstance(model, TwoQubitModel):
        # cos(theta/2)|01> + sin(theta/2)|10>
        psi = np.zeros(4, dtype=complex)
        psi[1] = np.cos(model.theta / 2.0)
        psi[2] = np.sin(model.theta / 2.0)
    else:
        raise TypeError(f"unknown model type {type(model).__name__}")
    return np.outer(psi, psi.conj())
