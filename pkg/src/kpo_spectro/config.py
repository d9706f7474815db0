"""Scenario configuration: JSON schema, overrides, validation, hashing.

A scenario file is a single JSON document.  All frequency-like quantities are
quoted as value/2pi in MHz (circuit energies as E/h in GHz); conversion to
internal angular frequencies happens here and only here.  Probe frequencies
are specified relative to half the pump frequency, i.e. the "omega_in" grid
holds omega_in - omega_p/2 values.
"""

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ModelValidityError
from .model import CircuitParams, ModelParams, circuit_to_model
from .units import from_ghz, from_mhz

SCHEMA_VERSION = 1

_MODEL_KEYS = {
    "delta_over_2pi_MHz",
    "chi_over_2pi_MHz",
    "beta_over_2pi_MHz",
    "kappa_ex_over_2pi_MHz",
    "kappa_int_over_2pi_MHz",
    "omega_drive_over_2pi_MHz",
}
_CIRCUIT_KEYS = {
    "e_c_over_h_GHz",
    "e_j_over_h_GHz",
    "n_squid",
    "delta_e_j_over_h_GHz",
    "omega_p_over_2pi_GHz",
    "kappa_ex_over_2pi_MHz",
    "kappa_int_over_2pi_MHz",
    "omega_drive_over_2pi_MHz",
}
_SOLVER_KEYS = {
    "dim",
    "level_cut",
    "harmonic_levels",
    "rate_levels",
    "wigner_points",
    "wigner_extent",
}
_SWEEP_KEYS = {"omega_in", "beta", "wigner_beta_over_2pi_MHz"}
_GRID_KEYS = {"start_over_2pi_MHz", "stop_over_2pi_MHz", "num"}
_TOP_KEYS = {"schema", "name", "model", "circuit", "sweep", "solver", "outputs"}

OUTPUT_KINDS = (
    "spectrum2d",
    "spectrum1d",
    "levels",
    "transitions",
    "populations",
    "nominal",
    "eta",
    "wigner",
    "steady",
)

_SOLVER_DEFAULTS = {
    "dim": 30,
    "level_cut": 8,
    "harmonic_levels": 6,
    "rate_levels": 4,
    "wigner_points": 101,
    "wigner_extent": None,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: materialized parameters plus the raw document."""

    name: str
    raw: dict
    params: ModelParams
    probe_grid: np.ndarray
    beta_grid: np.ndarray
    wigner_betas: tuple
    solver: dict
    outputs: dict = field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        return config_hash(self.raw)


def config_hash(raw: dict) -> str:
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def load_config_file(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: line {exc.lineno}: {exc.msg}")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")


def apply_overrides(raw: dict, assignments) -> dict:
    """Apply --set key=value pairs; returns a new document.

    Dotted keys address nested fields directly; bare keys are looked up in the
    model/circuit block, then solver, then the top level.
    """
    out = json.loads(json.dumps(raw))
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, text = item.partition("=")
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            value = text
        if "." in key:
            parts = key.split(".")
            node = out
            for part in parts[:-1]:
                if not isinstance(node, dict):
                    raise ConfigError(f"config path {key!r} is not settable", field=key)
                node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"config path {key!r} is not settable", field=key)
            node[parts[-1]] = value
        else:
            blocks = []
            for block_name in ("model", "circuit", "solver"):
                block = out.get(block_name)
                if isinstance(block, dict):
                    blocks.append(block)
            blocks.append(out)
            for block in blocks:
                if key in block:
                    block[key] = value
                    break
            else:
                raise ConfigError(
                    f"override key {key!r} not found in model/circuit, solver, or top level",
                    field=key,
                )
    return out


def _require(cond: bool, message: str, fieldpath: str):
    if not cond:
        raise ConfigError(message, field=fieldpath)


def _check_keys(block: dict, allowed: set, fieldpath: str):
    unknown = set(block) - allowed
    _require(not unknown, f"unknown keys {sorted(unknown)}", fieldpath)


def _number(block: dict, key: str, fieldpath: str, default=None):
    if key not in block:
        _require(default is not None, f"missing required key {key!r}", fieldpath)
        return default
    value = block[key]
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{key} must be a number, got {value!r}", f"{fieldpath}.{key}")
    return float(value)


def _grid(block, fieldpath) -> np.ndarray:
    _require(isinstance(block, dict), "grid spec must be an object", fieldpath)
    _check_keys(block, _GRID_KEYS, fieldpath)
    start = _number(block, "start_over_2pi_MHz", fieldpath)
    stop = _number(block, "stop_over_2pi_MHz", fieldpath)
    num = block.get("num")
    _require(isinstance(num, int) and num >= 1, "num must be a positive integer",
             f"{fieldpath}.num")
    if num > 1:
        _require(stop > start, "grid must be strictly ascending (stop > start)",
                 fieldpath)
    return from_mhz(np.linspace(start, stop, num))


def validate_config(raw: dict) -> ScenarioConfig:
    """Validate a raw document and materialize parameters and grids."""
    _require(isinstance(raw, dict), "config must be a JSON object", "<root>")
    _check_keys(raw, _TOP_KEYS, "<root>")
    _require(raw.get("schema") == SCHEMA_VERSION,
             f"schema must be {SCHEMA_VERSION}", "schema")
    name = raw.get("name", "scenario")
    _require(isinstance(name, str) and name != "", "name must be a non-empty string",
             "name")

    has_model = isinstance(raw.get("model"), dict)
    has_circuit = isinstance(raw.get("circuit"), dict)
    _require(has_model != has_circuit,
             "exactly one of 'model' or 'circuit' must be present", "<root>")

    solver = dict(_SOLVER_DEFAULTS)
    solver_block = raw.get("solver", {})
    _require(isinstance(solver_block, dict), "solver must be an object", "solver")
    _check_keys(solver_block, _SOLVER_KEYS, "solver")
    solver.update(solver_block)
    for key in ("dim", "level_cut", "harmonic_levels", "rate_levels", "wigner_points"):
        _require(isinstance(solver[key], int) and solver[key] >= 2,
                 f"{key} must be an integer >= 2", f"solver.{key}")
    _require(solver["level_cut"] <= solver["dim"],
             "level_cut cannot exceed dim", "solver.level_cut")
    _require(solver["harmonic_levels"] <= solver["dim"],
             "harmonic_levels cannot exceed dim", "solver.harmonic_levels")
    _require(solver["rate_levels"] <= solver["level_cut"],
             "rate_levels cannot exceed level_cut", "solver.rate_levels")
    extent = solver["wigner_extent"]
    _require(extent is None or (isinstance(extent, (int, float)) and extent > 0),
             "wigner_extent must be null or a positive number", "solver.wigner_extent")

    try:
        if has_model:
            block = raw["model"]
            _check_keys(block, _MODEL_KEYS, "model")
            params = ModelParams(
                delta=from_mhz(_number(block, "delta_over_2pi_MHz", "model")),
                chi=from_mhz(_number(block, "chi_over_2pi_MHz", "model")),
                beta=from_mhz(_number(block, "beta_over_2pi_MHz", "model")),
                kappa_ex=from_mhz(_number(block, "kappa_ex_over_2pi_MHz", "model")),
                kappa_int=from_mhz(_number(block, "kappa_int_over_2pi_MHz", "model")),
                omega_drive=from_mhz(
                    _number(block, "omega_drive_over_2pi_MHz", "model", default=0.0)
                ),
                dim=solver["dim"],
            )
        else:
            block = raw["circuit"]
            _check_keys(block, _CIRCUIT_KEYS, "circuit")
            n_squid = block.get("n_squid")
            _require(isinstance(n_squid, int) and n_squid >= 1,
                     "n_squid must be a positive integer", "circuit.n_squid")
            circuit = CircuitParams(
                e_c=from_ghz(_number(block, "e_c_over_h_GHz", "circuit")),
                e_j=from_ghz(_number(block, "e_j_over_h_GHz", "circuit")),
                n_squid=n_squid,
                delta_e_j=from_ghz(_number(block, "delta_e_j_over_h_GHz", "circuit")),
                omega_p=from_ghz(_number(block, "omega_p_over_2pi_GHz", "circuit")),
            )
            params = circuit_to_model(
                circuit,
                kappa_ex=from_mhz(
                    _number(block, "kappa_ex_over_2pi_MHz", "circuit", default=0.0)),
                kappa_int=from_mhz(
                    _number(block, "kappa_int_over_2pi_MHz", "circuit", default=0.0)),
                omega_drive=from_mhz(
                    _number(block, "omega_drive_over_2pi_MHz", "circuit", default=0.0)),
                dim=solver["dim"],
            )
    except ModelValidityError as exc:
        raise ConfigError(str(exc), field="model" if has_model else "circuit")

    sweep = raw.get("sweep", {})
    _require(isinstance(sweep, dict), "sweep must be an object", "sweep")
    _check_keys(sweep, _SWEEP_KEYS, "sweep")
    probe_grid = (
        _grid(sweep["omega_in"], "sweep.omega_in") if "omega_in" in sweep
        else from_mhz(np.linspace(-60.0, 60.0, 201))
    )
    beta_grid = (
        _grid(sweep["beta"], "sweep.beta") if "beta" in sweep
        else from_mhz(np.linspace(0.0, 20.0, 121))
    )
    _require(float(beta_grid[0]) >= 0.0, "beta grid must start at beta >= 0",
             "sweep.beta")
    wig = sweep.get("wigner_beta_over_2pi_MHz", [])
    _require(isinstance(wig, list) and
             all(isinstance(v, (int, float)) and not isinstance(v, bool) and v >= 0
                 for v in wig),
             "wigner_beta_over_2pi_MHz must be a list of non-negative numbers",
             "sweep.wigner_beta_over_2pi_MHz")
    wigner_betas = tuple(from_mhz(float(v)) for v in wig)

    outputs = raw.get("outputs", {})
    _require(isinstance(outputs, dict), "outputs must be an object", "outputs")
    for kind, path in outputs.items():
        _require(kind in OUTPUT_KINDS, f"unknown output kind {kind!r}", "outputs")
        _require(isinstance(path, str) and path != "",
                 f"output path for {kind} must be a non-empty string",
                 f"outputs.{kind}")

    return ScenarioConfig(
        name=name,
        raw=raw,
        params=params,
        probe_grid=probe_grid,
        beta_grid=beta_grid,
        wigner_betas=wigner_betas,
        solver=solver,
        outputs=dict(outputs),
    )


def scenario_names() -> list[str]:
    """Names of the scenario files shipped with the package."""
    from importlib import resources

    files = resources.files("kpo_spectro") / "scenarios"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_scenario(name_or_path) -> dict:
    """Load a config from a path, or by shipped-scenario name."""
    from importlib import resources

    text = str(name_or_path)
    if text.endswith(".json"):
        return load_config_file(text)
    candidate = resources.files("kpo_spectro") / "scenarios" / f"{text}.json"
    if candidate.is_file():
        return json.loads(candidate.read_text())
    raise ConfigError(
        f"{text!r} is neither a .json path nor a shipped scenario "
        f"(available: {', '.join(scenario_names())})"
    )
