"""Scripted scan runners producing the package's standard data products.

Each runner returns a :class:`ScanResult` whose rows are plain dicts in a
fixed column order, ready for CSV serialization.  Runs are deterministic:
there is no randomness anywhere, and sweep points are independent jobs that
a thread pool may execute in any order without changing the assembled
output.

Temperature derivatives follow the package-wide rule: validated central
differences of the numerically propagated states (closed forms are used
only as cross-checks in the test suite).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .closed_forms import optimal_ratio, steady_qsnr
from .errors import NoConvergence, NonPositiveInput
from .fisher import EstimateRecord, halving_consistency, qfi_spectral, qsnr, qubit_qfi
from .linalg import pauli, partial_trace
from .master_equation import build_liouvillian
from .models import (
    BathSpec,
    CommonBath,
    DirectProbeModel,
    LocalBaths,
    ProbeAncillaModel,
    TwoQubitModel,
    initial_state,
)
from .dynamics import propagate, steady_state, trajectory, states_at

__all__ = [
    "ScanResult",
    "OptSearchResult",
    "parallel_map",
    "worker_count",
    "golden_section_max",
    "make_model",
    "run_theta_scan",
    "run_direct_vs_ancilla",
    "run_kappa_sweep",
    "run_coherence_parametric",
    "run_two_qubit_configs",
    "run_steady_qsnr_curve",
    "run_evolve",
    "run_qfi_point",
]

WORKERS_ENV = "QTHERMO_WORKERS"

DEFAULT_THETAS = (0.0, np.pi / 4, np.pi / 2, 3 * np.pi / 4, np.pi)
DEFAULT_KAPPAS = (0.6, 0.7, 0.8, 0.9)
DEFAULT_PARAMETRIC_KAPPAS = (0.2, 0.4, 0.6, 0.8, 1.0, 1.2)

_SX = pauli("x")

# Fixed two-qubit measurement basis: |00>, (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2, |11>.
_TQ_BASIS = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0), 0.0],
        [0.0, 1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0), 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=complex,
).T


@dataclass(frozen=True)
class ScanResult:
    """Output table of one experiment: column order, rows, and the complete
    resolved parameter set needed to reproduce the run."""

    label: str
    params: dict
    columns: tuple[str, ...]
    rows: list[dict]

    def __post_init__(self):
        if not self.rows:
            raise NonPositiveInput(f"experiment {self.label!r} produced no rows")


@dataclass(frozen=True)
class OptSearchResult:
    """Located interior maximum of a 1-d scan."""

    argmax: float
    value: float
    bracket: tuple[float, float]
    bracket_values: tuple[float, float]
    tolerance: float

    def __post_init__(self):
        if not (self.value >= self.bracket_values[0] and self.value >= self.bracket_values[1]):
            raise NoConvergence(
                f"maximum {self.value} at {self.argmax} not interior to bracket {self.bracket}"
            )


def worker_count() -> int:
    env = os.environ.get(WORKERS_ENV, "").strip()
    if env:
        n = int(env)
        if n < 1:
            raise NonPositiveInput(f"{WORKERS_ENV} must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def parallel_map(fn, items, workers: int | None = None) -> list:
    """Order-preserving map over independent jobs."""
    items = list(items)
    if workers is None:
        workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def golden_section_max(fn, lo: float, hi: float, tol: float = 1e-6) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal function."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)


def make_model(
    name: str,
    *,
    temperature: float,
    eta: float,
    cutoff: float,
    kappa: float = 0.8,
    theta: float = np.pi / 2,
    omega_p: float = 1.0,
    omega_a: float = 1.0,
    omega0: float = 1.0,
    eta2: float | None = None,
):
    """Construct a model from flat scalar parameters (CLI plumbing)."""
    bath = BathSpec(eta=eta, cutoff=cutoff, temperature=temperature)
    if name == "direct":
        return DirectProbeModel(omega_p=omega_p, bath=bath)
    if name == "probe_ancilla":
        return ProbeAncillaModel(
            omega_p=omega_p, omega_a=omega_a, kappa=kappa, bath=bath, theta=theta
        )
    if name == "two_qubit_local":
        bath2 = BathSpec(eta=eta2 if eta2 is not None else eta, cutoff=cutoff, temperature=temperature)
        return TwoQubitModel(
            omega0=omega0, kappa=kappa, bath_config=LocalBaths(bath, bath2), theta=theta
        )
    if name == "two_qubit_common":
        cfg = CommonBath(
            eta1=eta, eta2=eta2 if eta2 is not None else eta,
            cutoff=cutoff, temperature=temperature,
        )
        return TwoQubitModel(omega0=omega0, kappa=kappa, bath_config=cfg, theta=theta)
    raise NonPositiveInput(f"unknown model name {name!r}")


class TemperatureFamily:
    """States of one model as a function of (t, T), with the five shifted
    temperatures needed for validated central differences prepared up front.

    ``reduce`` controls whether four-level states are projected onto the
    probe qubit.
    """

    def __init__(self, model_fn, temperature: float, h: float | None = None, reduce: bool = True):
        from .fisher import default_step

        self.temperature = float(temperature)
        self.h = default_step(temperature) if h is None else float(h)
        self.reduce = reduce
        t, h2 = self.temperature, self.h
        self.temps = (t - h2, t - h2 / 2.0, t, t + h2 / 2.0, t + h2)
        self._liou = {}
        self._rho0 = {}
        for tv in self.temps:
            model = model_fn(tv)
            self._liou[tv] = build_liouvillian(model)
            self._rho0[tv] = initial_state(model)
        self.dim = self._liou[self.temperature].dim

    def _project(self, rho):
        if self.reduce and rho.shape[0] == 4:
            return partial_trace(rho, keep=1)
        return rho

    def state(self, t: float, tv: float | None = None) -> np.ndarray:
        tv = self.temperature if tv is None else tv
        return self._project(propagate(self._liou[tv], self._rho0[tv], t))

    def grid_states(self, times) -> dict[float, list[np.ndarray]]:
        uniform = (
            len(times) > 2
            and times[0] == 0.0
            and np.allclose(np.diff(times), times[1] - times[0])
        )
        out = {}
        for tv in self.temps:
            if uniform:
                traj = trajectory(
                    self._liou[tv], self._rho0[tv], float(times[-1]), len(times),
                    reduce=self.reduce and self.dim == 4,
                )
                out[tv] = traj.reduced if traj.reduced is not None else traj.states
            else:
                out[tv] = [self._project(s) for s in states_at(self._liou[tv], self._rho0[tv], times)]
        return out

    def derivative_from(self, five_states) -> np.ndarray:
        """Validated central difference from states at the five temperatures."""
        m0, m1, _, m3, m4 = five_states
        d_h = (m4 - m0) / (2.0 * self.h)
        d_half = (m3 - m1) / self.h
        halving_consistency(d_h, d_half)
        return d_h

    def state_and_derivative(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        five = [self.state(t, tv) for tv in self.temps]
        return five[2], self.derivative_from(five)


def _qubit_record(t, rho, drho, temperature) -> EstimateRecord:
    f = qubit_qfi(rho, drho)
    mean = float(np.trace(rho @ _SX).real)
    var = float(np.trace(rho @ _SX @ _SX).real) - mean * mean
    dmean = float(np.trace(drho @ _SX).real)
    fi = dmean * dmean / var if var > 1e-14 else 0.0
    return EstimateRecord(
        t=float(t),
        qfi=f,
        fi_meas=fi,
        qsnr=qsnr(temperature, f),
        qfi_per_t=f / t if t > 0 else 0.0,
        coherence_abs=float(abs(rho[0, 1])),
    )


def _two_qubit_record(t, rho, drho, temperature) -> EstimateRecord:
    f = qfi_spectral(rho, drho)
    probs = np.array([float((_TQ_BASIS[:, k].conj() @ rho @ _TQ_BASIS[:, k]).real) for k in range(4)])
    dprobs = np.array([float((_TQ_BASIS[:, k].conj() @ drho @ _TQ_BASIS[:, k]).real) for k in range(4)])
    fi = 0.0
    for p, dp in zip(probs, dprobs):
        if p > 1e-14:
            fi += dp * dp / p
    return EstimateRecord(
        t=float(t),
        qfi=f,
        fi_meas=fi,
        qsnr=qsnr(temperature, f),
        qfi_per_t=f / t if t > 0 else 0.0,
        coherence_abs=float(abs(rho[1, 2])),
    )


def _records_on_grid(family: TemperatureFamily, times, record_fn) -> list[EstimateRecord]:
    grids = family.grid_states(times)
    temps = family.temps
    recs = []
    for i, t in enumerate(times):
        five = [grids[tv][i] for tv in temps]
        drho = family.derivative_from(five)
        recs.append(record_fn(t, five[2], drho, family.temperature))
    return recs


def _qfi_at(family: TemperatureFamily, record_fn, t: float) -> EstimateRecord:
    rho, drho = family.state_and_derivative(t)
    return record_fn(t, rho, drho, family.temperature)


def _refine_max(times, values, fn, tol=1e-6) -> OptSearchResult:
    i = int(np.argmax(values))
    if i == 0 or i == len(times) - 1:
        raise NoConvergence(
            f"maximum at grid edge t={times[i]}; extend the time grid to bracket it"
        )
    lo, hi = float(times[i - 1]), float(times[i + 1])
    x, v = golden_section_max(fn, lo, hi, tol)
    return OptSearchResult(
        argmax=x, value=v, bracket=(lo, hi),
        bracket_values=(float(fn(lo)), float(fn(hi))), tolerance=tol,
    )


_RECORD_COLUMNS = ("qfi", "cfi", "qsnr", "qfi_per_t", "coherence_abs")


def _row(rec: EstimateRecord) -> dict:
    return {
        "qfi": rec.qfi,
        "cfi": rec.fi_meas,
        "qsnr": rec.qsnr,
        "qfi_per_t": rec.qfi_per_t,
        "coherence_abs": rec.coherence_abs,
    }


def run_theta_scan(
    theta_list=DEFAULT_THETAS,
    *,
    temperature: float = 0.4,
    kappa: float = 0.8,
    eta: float = 0.01,
    cutoff: float = 10.0,
    t_max: float = 50.0,
    n_points: int = 500,
    workers: int | None = None,
) -> ScanResult:
    """Reduced-probe QFI(t) for a list of ancilla preparation angles."""
    times = np.linspace(0.0, t_max, n_points)
    params = dict(
        experiment="theta_scan", theta_list=list(map(float, theta_list)),
        temperature=temperature, kappa=kappa, eta=eta, cutoff=cutoff,
        t_max=t_max, n_points=n_points,
    )

    def one(theta):
        fam = TemperatureFamily(
            lambda tv: ProbeAncillaModel(
                omega_p=1.0, omega_a=1.0, kappa=kappa,
                bath=BathSpec(eta, cutoff, tv), theta=theta,
            ),
            temperature,
        )
        return _records_on_grid(fam, times, _qubit_record)

    rows = []
    for theta, recs in zip(theta_list, parallel_map(one, theta_list, workers)):
        for rec in recs:
            rows.append({"theta": float(theta), "t": rec.t, **_row(rec)})
    return ScanResult("theta_scan", params, ("theta", "t") + _RECORD_COLUMNS, rows)


def run_direct_vs_ancilla(
    *,
    temperature: float = 0.4,
    kappa: float = 0.8,
    eta: float = 0.01,
    cutoff: float = 10.0,
    theta: float = np.pi / 2,
    t_max: float = 50.0,
    n_points: int = 500,
    workers: int | None = None,
) -> ScanResult:
    """QFI(t) of the bare dephasing probe against the ancilla-shielded one."""
    times = np.linspace(0.0, t_max, n_points)
    params = dict(
        experiment="direct_vs_ancilla", temperature=temperature, kappa=kappa,
        eta=eta, cutoff=cutoff, theta=theta, t_max=t_max, n_points=n_points,
    )

    def one(scheme):
        if scheme == "direct":
            fam = TemperatureFamily(
                lambda tv: DirectProbeModel(omega_p=1.0, bath=BathSpec(eta, cutoff, tv)),
                temperature,
            )
        else:
            fam = TemperatureFamily(
                lambda tv: ProbeAncillaModel(
                    omega_p=1.0, omega_a=1.0, kappa=kappa,
                    bath=BathSpec(eta, cutoff, tv), theta=theta,
                ),
                temperature,
            )
        return _records_on_grid(fam, times, _qubit_record)

    schemes = ("direct", "ancilla")
    rows = []
    for scheme, recs in zip(schemes, parallel_map(one, schemes, workers)):
        for rec in recs:
            rows.append({"scheme": scheme, "t": rec.t, **_row(rec)})
    return ScanResult("direct_vs_ancilla", params, ("scheme", "t") + _RECORD_COLUMNS, rows)


def run_kappa_sweep(
    kappa_list=DEFAULT_KAPPAS,
    *,
    temperature: float = 0.4,
    eta: float = 0.01,
    cutoff: float = 10.0,
    theta: float = np.pi / 2,
    t_max: float = 120.0,
    n_points: int = 600,
    workers: int | None = None,
) -> tuple[ScanResult, list[OptSearchResult]]:
    """QFI(t), QFI/t and the located QSNR optimum for each coupling."""
    times = np.linspace(0.0, t_max, n_points)
    params = dict(
        experiment="kappa_sweep", kappa_list=list(map(float, kappa_list)),
        temperature=temperature, eta=eta, cutoff=cutoff, theta=theta,
        t_max=t_max, n_points=n_points,
    )

    def one(kappa):
        fam = TemperatureFamily(
            lambda tv: ProbeAncillaModel(
                omega_p=1.0, omega_a=1.0, kappa=kappa,
                bath=BathSpec(eta, cutoff, tv), theta=theta,
            ),
            temperature,
        )
        recs = _records_on_grid(fam, times, _qubit_record)
        opt = _refine_max(
            times,
            [r.qsnr for r in recs],
            lambda t: _qfi_at(fam, _qubit_record, t).qsnr,
        )
        return recs, opt

    rows, optima = [], []
    for kappa, (recs, opt) in zip(kappa_list, parallel_map(one, kappa_list, workers)):
        optima.append(opt)
        for rec in recs:
            rows.append({"kappa": float(kappa), "t": rec.t, **_row(rec)})
    scan = ScanResult("kappa_sweep", params, ("kappa", "t") + _RECORD_COLUMNS, rows)
    return scan, optima


def run_coherence_parametric(
    kappa_list=DEFAULT_PARAMETRIC_KAPPAS,
    *,
    temperature: float = 0.4,
    eta: float = 0.1,
    cutoff: float = 10.0,
    theta: float = np.pi / 2,
    t_max: float = 50.0,
    n_points: int = 500,
    workers: int | None = None,
) -> ScanResult:
    """Parametric curve (max coherence generated, optimal QSNR) over coupling."""
    times = np.linspace(0.0, t_max, n_points)
    params = dict(
        experiment="coherence_parametric", kappa_list=list(map(float, kappa_list)),
        temperature=temperature, eta=eta, cutoff=cutoff, theta=theta,
        t_max=t_max, n_points=n_points,
    )

    def one(kappa):
        fam = TemperatureFamily(
            lambda tv: ProbeAncillaModel(
                omega_p=1.0, omega_a=1.0, kappa=kappa,
                bath=BathSpec(eta, cutoff, tv), theta=theta,
            ),
            temperature,
        )
        recs = _records_on_grid(fam, times, _qubit_record)
        opt_r = _refine_max(
            times, [r.qsnr for r in recs],
            lambda t: _qfi_at(fam, _qubit_record, t).qsnr,
        )
        opt_c = _refine_max(
            times, [r.coherence_abs for r in recs],
            lambda t: float(abs(fam.state(t)[0, 1])),
        )
        return opt_c, opt_r

    rows = []
    for kappa, (opt_c, opt_r) in zip(kappa_list, parallel_map(one, kappa_list, workers)):
        rows.append(
            {
                "kappa": float(kappa),
                "max_coherence": opt_c.value,
                "t_max_coherence": opt_c.argmax,
                "qsnr_opt": opt_r.value,
                "t_opt": opt_r.argmax,
            }
        )
    return ScanResult(
        "coherence_parametric", params,
        ("kappa", "max_coherence", "t_max_coherence", "qsnr_opt", "t_opt"), rows,
    )


TWO_QUBIT_CONFIGS = ("local_separable", "local_entangled", "common_separable", "common_entangled")


def _two_qubit_family(config, temperature, kappa, eta1, eta2, cutoff):
    theta = 0.0 if config.endswith("separable") else np.pi / 2
    if config.startswith("local"):
        fn = lambda tv: TwoQubitModel(
            omega0=1.0, kappa=kappa,
            bath_config=LocalBaths(BathSpec(eta1, cutoff, tv), BathSpec(eta2, cutoff, tv)),
            theta=theta,
        )
    else:
        fn = lambda tv: TwoQubitModel(
            omega0=1.0, kappa=kappa,
            bath_config=CommonBath(eta1=eta1, eta2=eta2, cutoff=cutoff, temperature=tv),
            theta=theta,
        )
    return TemperatureFamily(fn, temperature, reduce=False)


def run_two_qubit_configs(
    *,
    temperature: float = 0.4,
    kappa: float = 0.6,
    eta1: float = 0.01,
    eta2: float = 0.05,
    cutoff: float = 10.0,
    t_max: float = 2000.0,
    n_points: int = 240,
    workers: int | None = None,
) -> ScanResult:
    """Full-state QFI(t) of the four bath/preparation configurations on a
    shared log-dense grid extending to the steady state.

    The per-configuration time to reach 99% of the steady QFI is refined by
    bisection and reported in ``params["t_99"]``; steady values are in
    ``params["steady_qfi"]``.
    """
    times = np.concatenate([[0.0], np.geomspace(0.01, t_max, n_points - 1)])
    params = dict(
        experiment="two_qubit_configs", temperature=temperature, kappa=kappa,
        eta1=eta1, eta2=eta2, cutoff=cutoff, t_max=t_max, n_points=n_points,
    )

    def one(config):
        fam = _two_qubit_family(config, temperature, kappa, eta1, eta2, cutoff)
        recs = _records_on_grid(fam, times, _two_qubit_record)
        f_ss = recs[-1].qfi
        target = 0.99 * f_ss
        f_vals = np.array([r.qfi for r in recs])
        above = np.nonzero(f_vals >= target)[0]
        i = int(above[0])
        if i == 0:
            t99 = 0.0
        else:
            lo, hi = float(times[i - 1]), float(times[i])
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if _qfi_at(fam, _two_qubit_record, mid).qfi >= target:
                    hi = mid
                else:
                    lo = mid
            t99 = 0.5 * (lo + hi)
        return recs, f_ss, t99

    rows = []
    steady = {}
    t99s = {}
    for config, (recs, f_ss, t99) in zip(
        TWO_QUBIT_CONFIGS, parallel_map(one, TWO_QUBIT_CONFIGS, workers)
    ):
        steady[config] = f_ss
        t99s[config] = t99
        for rec in recs:
            rows.append({"config": config, "t": rec.t, **_row(rec)})
    params["steady_qfi"] = steady
    params["t_99"] = t99s
    return ScanResult("two_qubit_configs", params, ("config", "t") + _RECORD_COLUMNS, rows)


def run_steady_qsnr_curve(
    ratio_grid=None,
    *,
    n_line: int = 50,
    line_t_min: float = 0.05,
    line_t_max: float = 2.0,
) -> ScanResult:
    """Steady QSNR as a function of x = kappa/T, its maximum, and the line of
    (T, kappa) pairs realizing the optimal ratio."""
    if ratio_grid is None:
        ratio_grid = np.linspace(0.05, 5.0, 200)
    ratio_grid = np.asarray(ratio_grid, dtype=float)
    values = np.array([steady_qsnr(x) for x in ratio_grid])
    opt = _refine_max(ratio_grid, values, steady_qsnr)
    x_star, qsnr_star = optimal_ratio()
    params = dict(
        experiment="steady_qsnr",
        ratio_min=float(ratio_grid[0]), ratio_max=float(ratio_grid[-1]),
        ratio_points=len(ratio_grid), n_line=n_line,
        line_t_min=line_t_min, line_t_max=line_t_max,
        located_max={"ratio": opt.argmax, "qsnr": opt.value},
        root_condition={"ratio": x_star, "qsnr": qsnr_star},
    )
    rows = [
        {"section": "curve", "ratio": float(x), "temperature": "", "kappa": "", "qsnr": float(v)}
        for x, v in zip(ratio_grid, values)
    ]
    for t in np.linspace(line_t_min, line_t_max, n_line):
        rows.append(
            {
                "section": "optimal_line",
                "ratio": x_star,
                "temperature": float(t),
                "kappa": float(x_star * t),
                "qsnr": qsnr_star,
            }
        )
    return ScanResult(
        "steady_qsnr", params, ("section", "ratio", "temperature", "kappa", "qsnr"), rows
    )


def run_evolve(
    model_name: str = "probe_ancilla",
    *,
    temperature: float = 0.4,
    eta: float = 0.01,
    eta2: float | None = None,
    cutoff: float = 10.0,
    kappa: float = 0.8,
    theta: float = np.pi / 2,
    t_max: float = 50.0,
    n_points: int = 500,
    workers: int | None = None,
) -> ScanResult:
    """Record populations, coherence and purity along one trajectory."""
    model = make_model(
        model_name, temperature=temperature, eta=eta, eta2=eta2,
        cutoff=cutoff, kappa=kappa, theta=theta,
    )
    liou = build_liouvillian(model)
    traj = trajectory(liou, initial_state(model), t_max, n_points)
    params = dict(
        experiment="evolve", model=model_name, temperature=temperature, eta=eta,
        eta2=eta2, cutoff=cutoff, kappa=kappa, theta=theta,
        t_max=t_max, n_points=n_points,
    )
    rows = []
    if liou.dim == 2:
        columns = ("t", "p0", "p1", "coherence_abs", "purity")
        for t, s in zip(traj.times, traj.states):
            rows.append(
                {
                    "t": float(t),
                    "p0": float(s[0, 0].real),
                    "p1": float(s[1, 1].real),
                    "coherence_abs": float(abs(s[0, 1])),
                    "purity": float(np.trace(s @ s).real),
                }
            )
    else:
        columns = ("t", "p00", "p01", "p10", "p11", "coherence_abs", "purity")
        for t, s in zip(traj.times, traj.states):
            rows.append(
                {
                    "t": float(t),
                    "p00": float(s[0, 0].real),
                    "p01": float(s[1, 1].real),
                    "p10": float(s[2, 2].real),
                    "p11": float(s[3, 3].real),
                    "coherence_abs": float(abs(s[1, 2])),
                    "purity": float(np.trace(s @ s).real),
                }
            )
    return ScanResult("evolve", params, columns, rows)


def run_qfi_point(
    model_name: str = "probe_ancilla",
    *,
    at: float | str = "steady",
    temperature: float = 0.4,
    eta: float = 0.01,
    eta2: float | None = None,
    cutoff: float = 10.0,
    kappa: float = 0.8,
    theta: float = np.pi / 2,
    workers: int | None = None,
) -> ScanResult:
    """Single-point estimate: QFI, measurement FI and QSNR at a time or at
    the steady state."""
    params = dict(
        experiment="qfi_point", model=model_name, at=at, temperature=temperature,
        eta=eta, eta2=eta2, cutoff=cutoff, kappa=kappa, theta=theta,
    )
    single_qubit = model_name in ("direct", "probe_ancilla")
    fam = TemperatureFamily(
        lambda tv: make_model(
            model_name, temperature=tv, eta=eta, eta2=eta2,
            cutoff=cutoff, kappa=kappa, theta=theta,
        ),
        temperature,
        reduce=single_qubit,
    )
    record_fn = _qubit_record if fam.dim == 2 or single_qubit else _two_qubit_record
    if at == "steady":
        states = {}
        for tv in fam.temps:
            res = steady_state(fam._liou[tv], fam._rho0[tv])
            states[tv] = fam._project(res.state)
        five = [states[tv] for tv in fam.temps]
        drho = fam.derivative_from(five)
        rec = record_fn(np.inf, five[2], drho, temperature)
        t_label = "steady"
    else:
        rec = _qfi_at(fam, record_fn, float(at))
        t_label = float(at)
    rows = [{"at": t_label, **_row(rec)}]
    return ScanResult("qfi_point", params, ("at",) + _RECORD_COLUMNS, rows)
