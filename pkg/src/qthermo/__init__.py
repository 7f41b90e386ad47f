"""qthermo: dephasing-qubit thermometry toolkit.

Simulates single-qubit (direct and ancilla-assisted) and two-qubit probes
coupled to Ohmic bosonic baths through global Markovian master equations,
and quantifies their temperature-estimation performance with quantum and
classical Fisher information.
"""

__version__ = "0.1.0"

from .models import (
    BathSpec,
    CommonBath,
    DirectProbeModel,
    LocalBaths,
    ProbeAncillaModel,
    TwoQubitModel,
    coupling_operators,
    hamiltonian,
    initial_state,
)
from .master_equation import (
    JumpChannel,
    Liouvillian,
    build_liouvillian,
    decoherence_rate,
    jump_operators,
    spectral_density,
    thermal_occupation,
)
from .dynamics import SteadyStateResult, Trajectory, propagate, steady_state, trajectory
from .closed_forms import (
    optimal_ratio,
    probe_state_closed_form,
    steady_qfi,
    steady_qsnr,
    steady_two_qubit,
)
from .fisher import (
    BlochVector,
    EstimateRecord,
    SLDOperator,
    bloch_components,
    cfi_povm,
    d_rho_dT,
    measurement_fi,
    qfi_bloch,
    qfi_spectral,
    qsnr,
    qubit_qfi,
    sld,
)

__all__ = [
    "__version__",
    "BathSpec",
    "CommonBath",
    "DirectProbeModel",
    "LocalBaths",
    "ProbeAncillaModel",
    "TwoQubitModel",
    "coupling_operators",
    "hamiltonian",
    "initial_state",
    "JumpChannel",
    "Liouvillian",
    "build_liouvillian",
    "decoherence_rate",
    "jump_operators",
    "spectral_density",
    "thermal_occupation",
    "SteadyStateResult",
    "Trajectory",
    "propagate",
    "steady_state",
    "trajectory",
    "optimal_ratio",
    "probe_state_closed_form",
    "steady_qfi",
    "steady_qsnr",
    "steady_two_qubit",
    "BlochVector",
    "EstimateRecord",
    "SLDOperator",
    "bloch_components",
    "cfi_povm",
    "d_rho_dT",
    "measurement_fi",
    "qfi_bloch",
    "qfi_spectral",
    "qsnr",
    "qubit_qfi",
    "sld",
]
