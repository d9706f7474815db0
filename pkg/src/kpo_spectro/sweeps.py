"""Sweep orchestration and CSV artifacts.

Every runner maps a validated ScenarioConfig to a SweepResult: a column-named
row table plus a provenance block (config hash, solver settings), serialized
as CSV with '#'-prefixed header lines.  Output is deterministic: floats are
formatted with 12 significant digits, header lines carry no timestamps, and
parallel execution distributes pure per-beta computations whose results are
reassembled in axis order.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .config import ScenarioConfig
from .eigensystem import EigenSystem, eigensystem_sweep, diagonalize
from .errors import ConfigError, SolverError
from .fock import PARITY_NAMES
from .lindblad import build_generator, populations_in_eigenbasis, steady_state
from .model import ModelParams, build_h0
from .spectroscopy import eta, finite_drive_gamma, nominal_rates, weak_field_gamma
from .units import to_mhz
from .wigner import wigner


@dataclass(frozen=True)
class SweepResult:
    kind: str
    columns: tuple
    rows: list
    provenance: dict

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise SolverError(f"row width {len(row)} != {len(self.columns)}")
            for value in row:
                if isinstance(value, (int, float)) and not np.isfinite(value):
                    raise SolverError(f"non-finite payload in {self.kind} result")


def _provenance(scenario: ScenarioConfig, kind: str, notes=()) -> dict:
    solver = scenario.solver
    solver_line = " ".join(
        f"{key}={solver[key]}"
        for key in ("dim", "level_cut", "harmonic_levels", "rate_levels")
    )
    return {
        "scenario": scenario.name,
        "kind": kind,
        "config_hash": scenario.config_hash,
        "solver": solver_line,
        "notes": tuple(notes),
    }


def _ambiguity_notes(systems) -> list:
    flagged = [i for i, es in enumerate(systems) if es.ambiguous]
    if not flagged:
        return []
    return [f"label_ambiguity: adiabatic labeling was ambiguous from sweep index {flagged[0]}"]


# ---------------------------------------------------------------------------
# parallel engine: top-level workers over picklable payloads

def _stationary_populations(params: ModelParams, es: EigenSystem) -> np.ndarray:
    rho = steady_state(build_generator(params))
    return populations_in_eigenbasis(rho, es)


def _weak_column(task):
    params, es, probe_grid, level_cut = task
    pops = _stationary_populations(params, es)
    trace = weak_field_gamma(params, es, pops, probe_grid, level_cut=level_cut)
    return trace.gamma


def _finite_column(task):
    params, es, probe_grid, harmonic_levels = task
    return finite_drive_gamma(params, es, probe_grid, level_cut=harmonic_levels)


def _pops_column(task):
    params, es = task
    return _stationary_populations(params, es)


def _map_ordered(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------------------
# runners

def run_spectrum_2d(scenario: ScenarioConfig, jobs: int = 1) -> SweepResult:
    """|Gamma|(omega_in, beta) heatmap data; one steady state per beta."""
    params = scenario.params
    systems = eigensystem_sweep(params, scenario.beta_grid)
    finite = params.omega_drive > 0
    if finite:
        tasks = [
            (replace(params, beta=float(b)), es, scenario.probe_grid,
             scenario.solver["harmonic_levels"])
            for b, es in zip(scenario.beta_grid, systems)
        ]
        columns_fn = _finite_column
    else:
        tasks = [
            (replace(params, beta=float(b)), es, scenario.probe_grid,
             scenario.solver["level_cut"])
            for b, es in zip(scenario.beta_grid, systems)
        ]
        columns_fn = _weak_column
    gammas = _map_ordered(columns_fn, tasks, jobs)
    rows = []
    for b, gamma in zip(scenario.beta_grid, gammas):
        b_mhz = to_mhz(float(b))
        for d, g in zip(scenario.probe_grid, gamma):
            rows.append((b_mhz, to_mhz(float(d)), g.real, g.imag, abs(g)))
    notes = _ambiguity_notes(systems)
    if finite:
        notes.append(f"finite_drive: omega_drive_over_2pi_MHz={to_mhz(params.omega_drive):g}")
    return SweepResult(
        kind="spectrum2d",
        columns=("beta_over_2pi_MHz", "omega_in_minus_omega_p_half_over_2pi_MHz",
                 "re_gamma", "im_gamma", "abs_gamma"),
        rows=rows,
        provenance=_provenance(scenario, "spectrum2d", notes),
    )


def run_spectrum_1d(scenario: ScenarioConfig, jobs: int = 1,
                    per_transition: bool = False) -> SweepResult:
    """Reflection trace at the configured fixed beta."""
    params = scenario.params
    es = diagonalize(build_h0(params), params)
    columns = ["omega_in_minus_omega_p_half_over_2pi_MHz",
               "re_gamma", "im_gamma", "abs_gamma"]
    pair_list = []
    if params.omega_drive > 0:
        gamma = finite_drive_gamma(params, es, scenario.probe_grid,
                                   level_cut=scenario.solver["harmonic_levels"])
        per = None
    else:
        pops = _stationary_populations(params, es)
        trace = weak_field_gamma(params, es, pops, scenario.probe_grid,
                                 level_cut=scenario.solver["level_cut"],
                                 per_transition=per_transition)
        gamma = trace.gamma
        per = trace.per_transition
        if per_transition:
            n_rate = scenario.solver["rate_levels"]
            pair_list = [(m, n) for m in range(n_rate) for n in range(n_rate) if m != n]
            for m, n in pair_list:
                columns += [f"re_g_{m}{n}", f"im_g_{m}{n}"]
    rows = []
    for i, d in enumerate(scenario.probe_grid):
        g = gamma[i]
        row = [to_mhz(float(d)), g.real, g.imag, abs(g)]
        for m, n in pair_list:
            term = per[(m, n)][i]
            row += [term.real, term.imag]
        rows.append(tuple(row))
    notes = _ambiguity_notes([es])
    return SweepResult(
        kind="spectrum1d",
        columns=tuple(columns),
        rows=rows,
        provenance=_provenance(scenario, "spectrum1d", notes),
    )


def run_levels(scenario: ScenarioConfig, jobs: int = 1):
    """Energy diagram plus transition-frequency curves (two results)."""
    params = scenario.params
    level_cut = scenario.solver["level_cut"]
    n_rate = scenario.solver["rate_levels"]
    systems = eigensystem_sweep(params, scenario.beta_grid)
    notes = _ambiguity_notes(systems)

    columns = (["beta_over_2pi_MHz"]
               + [f"omega_{m}_over_2pi_MHz" for m in range(level_cut)]
               + [f"parity_{m}" for m in range(level_cut)])
    rows = []
    for b, es in zip(scenario.beta_grid, systems):
        row = [to_mhz(float(b))]
        row += [to_mhz(float(es.eigenvalues[m])) for m in range(level_cut)]
        row += [PARITY_NAMES[es.parities[m]] for m in range(level_cut)]
        rows.append(tuple(row))
    levels = SweepResult(
        kind="levels",
        columns=tuple(columns),
        rows=rows,
        provenance=_provenance(scenario, "levels", notes),
    )

    pair_list = [(m, n) for m in range(n_rate) for n in range(n_rate) if m != n]
    trows = []
    for b, es in zip(scenario.beta_grid, systems):
        b_mhz = to_mhz(float(b))
        for m, n in pair_list:
            dw = float(es.eigenvalues[n] - es.eigenvalues[m])
            trows.append((b_mhz, m, n, to_mhz(dw)))
    transitions_result = SweepResult(
        kind="transitions",
        columns=("beta_over_2pi_MHz", "m", "n", "delta_omega_over_2pi_MHz"),
        rows=trows,
        provenance=_provenance(scenario, "transitions", notes),
    )
    return levels, transitions_result


def _population_sweep(scenario: ScenarioConfig, jobs: int):
    params = scenario.params
    systems = eigensystem_sweep(params, scenario.beta_grid)
    tasks = [(replace(params, beta=float(b)), es)
             for b, es in zip(scenario.beta_grid, systems)]
    pops = _map_ordered(_pops_column, tasks, jobs)
    return systems, pops


def run_populations(scenario: ScenarioConfig, jobs: int = 1) -> SweepResult:
    """Stationary populations of the labeled levels along the beta grid."""
    level_cut = scenario.solver["level_cut"]
    systems, pops = _population_sweep(scenario, jobs)
    rows = [
        tuple([to_mhz(float(b))] + [float(p[m]) for m in range(level_cut)])
        for b, p in zip(scenario.beta_grid, pops)
    ]
    return SweepResult(
        kind="populations",
        columns=tuple(["beta_over_2pi_MHz"] + [f"pop_{m}" for m in range(level_cut)]),
        rows=rows,
        provenance=_provenance(scenario, "populations", _ambiguity_notes(systems)),
    )


def run_nominal(scenario: ScenarioConfig, jobs: int = 1) -> SweepResult:
    """Nominal decay rates per transition along the beta grid."""
    params = scenario.params
    n_rate = scenario.solver["rate_levels"]
    systems, pops = _population_sweep(scenario, jobs)
    pair_list = [(m, n) for m in range(n_rate) for n in range(n_rate) if m != n]
    rows = []
    for b, es, p in zip(scenario.beta_grid, systems, pops):
        b_mhz = to_mhz(float(b))
        params_b = replace(params, beta=float(b))
        for m, n in pair_list:
            kex_t, kint_t = nominal_rates(params_b, es, p, m, n)
            rows.append((b_mhz, m, n, to_mhz(kex_t), to_mhz(kint_t)))
    return SweepResult(
        kind="nominal",
        columns=("beta_over_2pi_MHz", "m", "n",
                 "kex_tilde_over_2pi_MHz", "kint_tilde_over_2pi_MHz"),
        rows=rows,
        provenance=_provenance(scenario, "nominal", _ambiguity_notes(systems)),
    )


def run_eta(scenario: ScenarioConfig, jobs: int = 1) -> SweepResult:
    """Peak/dip indicator eta per transition along the beta grid."""
    n_rate = scenario.solver["rate_levels"]
    systems, pops = _population_sweep(scenario, jobs)
    pair_list = [(m, n) for m in range(n_rate) for n in range(n_rate) if m != n]
    rows = []
    for b, es, p in zip(scenario.beta_grid, systems, pops):
        b_mhz = to_mhz(float(b))
        for m, n in pair_list:
            rows.append((b_mhz, m, n, eta(es, p, m, n)))
    return SweepResult(
        kind="eta",
        columns=("beta_over_2pi_MHz", "m", "n", "eta"),
        rows=rows,
        provenance=_provenance(scenario, "eta", _ambiguity_notes(systems)),
    )


def wigner_axes(scenario: ScenarioConfig) -> np.ndarray:
    """Common symmetric quadrature axis for all requested snapshots.

    The automatic extent covers the outermost coherent lobe at sqrt(2)*alpha
    plus a 3-unit margin, which keeps the clipped Gaussian tail mass well
    below the 1e-3 normalization tolerance.
    """
    extent = scenario.solver["wigner_extent"]
    if extent is None:
        betas = scenario.wigner_betas or (scenario.params.beta,)
        alpha = np.sqrt(2.0 * max(betas) / scenario.params.chi) if max(betas) > 0 else 0.0
        extent = np.sqrt(2.0) * alpha + 3.0
    return np.linspace(-float(extent), float(extent), scenario.solver["wigner_points"])


def run_wigner(scenario: ScenarioConfig, jobs: int = 1) -> list[SweepResult]:
    """Wigner function of the stationary state, one result per beta snapshot."""
    params = scenario.params
    betas = scenario.wigner_betas or (params.beta,)
    axis = wigner_axes(scenario)
    results = []
    for b in betas:
        params_b = replace(params, beta=float(b))
        rho = steady_state(build_generator(params_b))
        grid = wigner(rho, axis, axis)
        rows = []
        for i, x in enumerate(grid.x_axis):
            for j, p in enumerate(grid.p_axis):
                rows.append((float(x), float(p), float(grid.values[i, j])))
        notes = [
            f"beta_over_2pi_MHz: {to_mhz(float(b)):g}",
            "quadratures: x = (a+a^dag)/sqrt(2), p = -i(a-a^dag)/sqrt(2); "
            "a coherent state |alpha> sits at (sqrt(2) Re alpha, sqrt(2) Im alpha)",
            f"grid: {axis.size} x {axis.size}, extent +-{axis[-1]:g}",
        ]
        results.append(SweepResult(
            kind="wigner",
            columns=("x", "p", "w"),
            rows=rows,
            provenance=_provenance(scenario, "wigner", notes),
        ))
    return results


def run_steady(scenario: ScenarioConfig, jobs: int = 1) -> SweepResult:
    """Stationary populations and level data at the configured beta."""
    params = scenario.params
    level_cut = scenario.solver["level_cut"]
    es = diagonalize(build_h0(params), params)
    pops = _stationary_populations(params, es)
    rows = [
        (m, to_mhz(float(es.eigenvalues[m])), PARITY_NAMES[es.parities[m]],
         float(pops[m]))
        for m in range(level_cut)
    ]
    return SweepResult(
        kind="steady",
        columns=("label", "omega_over_2pi_MHz", "parity", "population"),
        rows=rows,
        provenance=_provenance(scenario, "steady", _ambiguity_notes([es])),
    )


# ---------------------------------------------------------------------------
# CSV serialization

def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.12g}"


def _existing_hash(path) -> str | None:
    try:
        with open(path) as fh:
            for line in fh:
                if not line.startswith("#"):
                    return None
                if line.startswith("# config_hash:"):
                    return line.split(":", 1)[1].strip()
    except OSError:
        return None
    return None


def write_csv(result: SweepResult, path, force: bool = False) -> str:
    """Write a SweepResult as CSV; refuse to overwrite foreign artifacts.

    An existing file is only replaced without --force when its provenance
    hash matches the current configuration.
    """
    path = str(path)
    if os.path.exists(path) and not force:
        old = _existing_hash(path)
        if old != result.provenance["config_hash"]:
            raise ConfigError(
                f"{path} exists with config_hash {old!r}; re-run with --force to overwrite"
            )
    lines = [
        f"# kpo-spectro {__version__}",
        f"# scenario: {result.provenance['scenario']}",
        f"# kind: {result.kind}",
        f"# config_hash: {result.provenance['config_hash']}",
        f"# solver: {result.provenance['solver']}",
    ]
    lines += [f"# {note}" for note in result.provenance["notes"]]
    lines.append(",".join(result.columns))
    for row in result.rows:
        lines.append(",".join(_format_value(v) for v in row))
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
