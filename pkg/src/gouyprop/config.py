"""Run configuration files (YAML).

Example::

    medium:
      wavelength_nm: 653
      n_transverse: 1.515
      delta_n: 0.5
      profile: {type: cosine, lambda_per_k0: 50}
    states:
      - {alpha_abs: 1.0, phi_rad: 0.0, noise0: 1.0}
      - {alpha_abs: 1.0, phi_rad: 0.0, noise0: 1.5}
    run:
      z_samples: 2001
      rel_tol: 1.0e-10

Unknown keys are rejected so that typos never pass silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import yaml

from .classical import REL_TOL_RANGE
from .errors import ConfigError, GouypropError
from .media import Constant, Cosine, MediumSpec, Tabulated
from .quantum import GaussianStateSpec
from .scenarios import OUTPUT_KINDS, REFERENCE_STATES, ExperimentConfig

__all__ = ["CliConfig", "load_config", "parse_config", "reference_config_dict"]

_MEDIUM_KEYS = {"wavelength_nm", "n_transverse", "delta_n", "profile", "length_nm"}
_PROFILE_KEYS = {
    "constant": {"type", "level"},
    "cosine": {"type", "lambda_per_k0"},
    "tabulated": {"type", "samples"},
}
_STATE_KEYS = {"alpha_abs", "phi_rad", "noise0"}
_RUN_KEYS = {"z_samples", "rel_tol", "grid_points", "output_dir", "outputs", "snapshot_z_nm"}
_RUN_DEFAULTS = {
    "z_samples": 2001,
    "rel_tol": 1e-10,
    "grid_points": 2048,
    "output_dir": "out",
    "outputs": ["effective_index", "classical_phase", "noise", "gouy"],
    "snapshot_z_nm": [],
}


def reference_config_dict():
    """Configuration of the reference cosine-medium experiment."""
    return {
        "medium": {
            "wavelength_nm": 653.0,
            "n_transverse": 1.515,
            "delta_n": 0.5,
            "profile": {"type": "cosine", "lambda_per_k0": 50.0},
        },
        "states": [
            {"alpha_abs": s.amplitude, "phi_rad": s.phase, "noise0": s.noise0} for s in REFERENCE_STATES
        ],
        "run": dict(_RUN_DEFAULTS),
    }


@dataclass(frozen=True)
class CliConfig:
    experiment: ExperimentConfig
    output_dir: str
    resolved: dict

    @property
    def medium(self):
        return self.experiment.medium

    @property
    def rel_tol(self):
        return self.experiment.rel_tol


def _mapping(value, where):
    if not isinstance(value, dict):
        raise ConfigError(f"{where}: expected a mapping, got {type(value).__name__}")
    return value


def _reject_unknown(block, allowed, where):
    extra = sorted(set(block) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(extra)}")


def _number(value, where):
    # PyYAML reads 1e-10 (no decimal point) as a string
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number, got {value!r}") from None
    if not math.isfinite(x):
        raise ConfigError(f"{where}: must be finite, got {value!r}")
    return x


def _integer(value, where):
    x = _number(value, where)
    if x != int(x):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return int(x)


def _require(block, key, where):
    if key not in block:
        raise ConfigError(f"{where}.{key}: required key missing")
    return block[key]


def _profile(block, k0):
    block = _mapping(block, "medium.profile")
    kind = _require(block, "type", "medium.profile")
    if kind not in _PROFILE_KEYS:
        raise ConfigError(
            f"medium.profile.type: expected one of {sorted(_PROFILE_KEYS)}, got {kind!r}"
        )
    _reject_unknown(block, _PROFILE_KEYS[kind], "medium.profile")
    resolved = {"type": kind}
    if kind == "constant":
        level = _number(block.get("level", 1.0), "medium.profile.level")
        resolved["level"] = level
        return Constant(level), resolved
    if kind == "cosine":
        ratio = _number(_require(block, "lambda_per_k0", "medium.profile"), "medium.profile.lambda_per_k0")
        if ratio <= 0:
            raise ConfigError(f"medium.profile.lambda_per_k0: must be positive, got {ratio}")
        resolved["lambda_per_k0"] = ratio
        return Cosine(k0 / ratio), resolved
    samples = _require(block, "samples", "medium.profile")
    if not isinstance(samples, list) or not all(
        isinstance(s, (list, tuple)) and len(s) == 2 for s in samples
    ):
        raise ConfigError("medium.profile.samples: expected a list of [z_nm, h] pairs")
    pairs = [
        (_number(z, f"medium.profile.samples[{i}][0]"), _number(h, f"medium.profile.samples[{i}][1]"))
        for i, (z, h) in enumerate(samples)
    ]
    resolved["samples"] = [list(p) for p in pairs]
    try:
        return Tabulated.from_pairs(pairs), resolved
    except GouypropError as exc:
        raise ConfigError(f"medium.profile.samples: {exc}") from None


def _medium(block):
    block = _mapping(block, "medium")
    _reject_unknown(block, _MEDIUM_KEYS, "medium")
    wl = _number(_require(block, "wavelength_nm", "medium"), "medium.wavelength_nm")
    if wl <= 0:
        raise ConfigError(f"medium.wavelength_nm: must be positive, got {wl}")
    nt = _number(_require(block, "n_transverse", "medium"), "medium.n_transverse")
    dn = _number(_require(block, "delta_n", "medium"), "medium.delta_n")
    profile, prof_resolved = _profile(_require(block, "profile", "medium"), 2.0 * math.pi / wl)
    length = block.get("length_nm")
    if length is not None:
        length = _number(length, "medium.length_nm")
    try:
        medium = MediumSpec(wl, nt, dn, profile, length)
    except GouypropError as exc:
        raise ConfigError(f"medium: {exc}") from None
    resolved = {
        "wavelength_nm": wl,
        "n_transverse": nt,
        "delta_n": dn,
        "profile": prof_resolved,
        "length_nm": medium.length_nm,
    }
    return medium, resolved


def _states(items):
    if not isinstance(items, list):
        raise ConfigError("states: expected a list")
    states, resolved = [], []
    for i, item in enumerate(items):
        where = f"states[{i}]"
        item = _mapping(item, where)
        _reject_unknown(item, _STATE_KEYS, where)
        a = _number(item.get("alpha_abs", 1.0), f"{where}.alpha_abs")
        phi = _number(item.get("phi_rad", 0.0), f"{where}.phi_rad")
        d0 = _number(item.get("noise0", 1.0), f"{where}.noise0")
        try:
            states.append(GaussianStateSpec(a, phi, d0))
        except GouypropError as exc:
            raise ConfigError(f"{where}: {exc}") from None
        resolved.append({"alpha_abs": a, "phi_rad": phi, "noise0": d0})
    return states, resolved


def parse_config(data, strict_tolerance=True) -> CliConfig:
    """Validate a configuration mapping and build the experiment.

    ``strict_tolerance=False`` admits rel_tol anywhere in (0, 1); the
    verification command uses it to run deliberately degraded integrations.
    """
    data = _mapping(data if data is not None else {}, "config")
    _reject_unknown(data, {"medium", "states", "run"}, "config")
    medium, med_resolved = _medium(_require(data, "medium", "config"))
    if "states" in data:
        states, st_resolved = _states(data["states"])
    else:
        states, st_resolved = _states(reference_config_dict()["states"])

    run = _mapping(data.get("run", {}) or {}, "run")
    _reject_unknown(run, _RUN_KEYS, "run")
    z_samples = _integer(run.get("z_samples", _RUN_DEFAULTS["z_samples"]), "run.z_samples")
    rel_tol = _number(run.get("rel_tol", _RUN_DEFAULTS["rel_tol"]), "run.rel_tol")
    lo, hi = REL_TOL_RANGE if strict_tolerance else (0.0, 1.0)
    if not (lo <= rel_tol <= hi) or rel_tol <= 0 or rel_tol >= 1:
        raise ConfigError(f"run.rel_tol: must lie in [{lo:g}, {hi:g}], got {rel_tol:g}")
    grid_points = _integer(run.get("grid_points", _RUN_DEFAULTS["grid_points"]), "run.grid_points")
    output_dir = str(run.get("output_dir", _RUN_DEFAULTS["output_dir"]))
    outputs = run.get("outputs", _RUN_DEFAULTS["outputs"])
    if not isinstance(outputs, list) or any(o not in OUTPUT_KINDS for o in outputs):
        raise ConfigError(f"run.outputs: expected a list drawn from {list(OUTPUT_KINDS)}")
    snaps = run.get("snapshot_z_nm", [])
    if not isinstance(snaps, list):
        raise ConfigError("run.snapshot_z_nm: expected a list of positions")
    snaps = [_number(z, f"run.snapshot_z_nm[{i}]") for i, z in enumerate(snaps)]
    if snaps and "wavefunction_snapshots" not in outputs:
        outputs = list(outputs) + ["wavefunction_snapshots"]

    try:
        experiment = ExperimentConfig(
            medium=medium,
            states=tuple(states),
            z_samples=z_samples,
            outputs=tuple(outputs),
            rel_tol=rel_tol,
            snapshot_z_nm=tuple(snaps),
            ofs_points=grid_points,
        )
    except GouypropError as exc:
        raise ConfigError(f"run: {exc}") from None
    if grid_points < 64:
        raise ConfigError(f"run.grid_points: must be >= 64, got {grid_points}")

    resolved = {
        "medium": med_resolved,
        "states": st_resolved,
        "run": {
            "z_samples": z_samples,
            "rel_tol": rel_tol,
            "grid_points": grid_points,
            "output_dir": output_dir,
            "outputs": list(outputs),
            "snapshot_z_nm": snaps,
        },
    }
    return CliConfig(experiment, output_dir, resolved)


def load_config(path, strict_tolerance=True) -> CliConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from None
    return parse_config(data, strict_tolerance=strict_tolerance)
