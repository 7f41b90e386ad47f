"""Time evolution under a fixed Liouvillian and steady-state extraction.

The generator is time independent and at most 16x16, so evolution uses the
exact superoperator exponential; there is no integrator truncation error to
account for in comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DegenerateSteadyState, NoConvergence, NonPositiveInput
from .linalg import expm, partial_trace, unvec, validate_density_matrix, vec
from .master_equation import Liouvillian

__all__ = ["propagate", "states_at", "trajectory", "Trajectory", "steady_state", "SteadyStateResult"]


def _evolve_vec(liouvillian: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    return expm(liouvillian.superop * t) @ vec(rho0)


def propagate(liouvillian: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """Evolve a state for time ``t >= 0`` and re-Hermitize the result.

    Raises ``PositivityViolation`` if the output state has an eigenvalue
    below -1e-8, which would signal a defective generator.
    """
    if t < 0:
        raise NonPositiveInput(f"propagation time must be >= 0, got {t}")
    rho = unvec(_evolve_vec(liouvillian, rho0, t))
    rho = 0.5 * (rho + rho.conj().T)
    return validate_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-10, eig_floor=-1e-8)


def states_at(liouvillian: Liouvillian, rho0: np.ndarray, times) -> list[np.ndarray]:
    """States at an arbitrary ascending list of times (one exponential each)."""
    return [propagate(liouvillian, rho0, float(t)) for t in times]


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled evolution; ``reduced`` holds the probe-qubit states
    when requested."""

    times: np.ndarray
    states: list[np.ndarray]
    reduced: list[np.ndarray] | None = None


def trajectory(
    liouvillian: Liouvillian,
    rho0: np.ndarray,
    t_max: float,
    n_points: int,
    reduce: bool = False,
) -> Trajectory:
    """Evolve on the uniform grid ``linspace(0, t_max, n_points)``.

    One exponential of the generator is computed for the grid step and
    applied repeatedly; every sampled state is validated against the density
    matrix invariants.
    """
    if t_max <= 0:
        raise NonPositiveInput(f"t_max must be > 0, got {t_max}")
    if n_points < 2:
        raise NonPositiveInput(f"n_points must be >= 2, got {n_points}")
    times = np.linspace(0.0, float(t_max), int(n_points))
    step = expm(liouvillian.superop * (times[1] - times[0]))
    states = []
    v = vec(rho0)
    for i in range(len(times)):
        if i > 0:
            v = step @ v
        rho = unvec(v)
        rho = 0.5 * (rho + rho.conj().T)
        validate_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-10, eig_floor=-1e-8)
        states.append(rho)
    reduced = None
    if reduce:
        if liouvillian.dim != 4:
            raise BadDimension("reduce=True needs a two-qubit generator")
        reduced = [partial_trace(s, keep=1) for s in states]
    return Trajectory(times=times, states=states, reduced=reduced)


@dataclass(frozen=True)
class SteadyStateResult:
    """Stationary state with the route that produced it: ``"nullspace"`` for
    a unique kernel of the generator, ``"dynamical"`` for long-time evolution
    of an initial state inside its conserved sector."""

    state: np.ndarray
    method: str
    residual: float


def _residual(liouvillian: Liouvillian, rho: np.ndarray) -> float:
    return float(np.max(np.abs(liouvillian.apply(rho))))


def steady_state(
    liouvillian: Liouvillian,
    rho0: np.ndarray | None = None,
    residual_tol: float = 1e-10,
    t_limit: float = 1e5,
) -> SteadyStateResult:
    """Solve ``L[rho] = 0``.

    When the null space of the generator is one dimensional it is extracted
    directly.  The dephasing models conserve excitation sectors, so their
    null spaces are degenerate; in that case the supplied ``rho0`` is evolved
    with doubling horizons until the residual ``max |L[rho]|`` drops below
    ``residual_tol``.  ``NoConvergence`` is raised if the residual still
    exceeds 1e-8 at ``t_limit``.
    """
    s = np.linalg.svd(liouvillian.superop, compute_uv=False)
    null_dim = int(np.sum(s < 1e-12 * max(s[0], 1.0)))
    if null_dim == 1:
        _, _, vh = np.linalg.svd(liouvillian.superop)
        rho = unvec(vh[-1].conj())
        rho = 0.5 * (rho + rho.conj().T)
        tr = float(np.trace(rho).real)
        if abs(tr) < 1e-8:
            raise DegenerateSteadyState("null vector is traceless; sector structure suspected")
        rho = rho / tr
        validate_density_matrix(rho, herm_tol=1e-10, trace_tol=1e-10, eig_floor=-1e-10)
        return SteadyStateResult(state=rho, method="nullspace", residual=_residual(liouvillian, rho))

    if rho0 is None:
        raise DegenerateSteadyState(
            f"generator null space has dimension {null_dim}; "
            "supply the initial state that selects the reachable sector"
        )
    t = 1.0
    while True:
        rho = propagate(liouvillian, rho0, t)
        res = _residual(liouvillian, rho)
        if res < residual_tol:
            return SteadyStateResult(state=rho, method="dynamical", residual=res)
        if t >= t_limit:
            if res <= 1e-8:
                return SteadyStateResult(state=rho, method="dynamical", residual=res)
            raise NoConvergence(
                f"residual {res:.3e} after t = {t:.3e}; no stationary state reached"
            )
        t *= 2.0
