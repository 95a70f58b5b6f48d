"""Config parsing and the delimited-text output formats.

Config files are YAML with nested sections mirroring SimConfig; every
key is optional and the defaults reproduce the reference rupture setup
(see configs/schema.yaml for the documented template).

Data files are comma-delimited text with '#'-prefixed metadata lines
before the header row.  All numbers are written as %.17e so parsing
reproduces the doubles bit-exactly.  Snapshots carry one row per
element (x1_m, slip_m, slip_rate_m_s, shear_stress_Pa); probe files
carry (t_s, slip_rate_m_s).  The run manifest is JSON.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .errors import ConfigError
from .friction import InterfaceState, SlipWeakeningLaw
from .kernels import KernelConfig, Material, MaterialPair
from .simulator import SimConfig

_FLOAT_FMT = "%.17e"


# -- config ---------------------------------------------------------------


def _section(data: dict, name: str, allowed: set) -> dict:
    sec = data.get(name, {})
    if sec is None:
        sec = {}
    if not isinstance(sec, dict):
        raise ConfigError(f"config section '{name}' must be a mapping")
    unknown = set(sec) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) in config section '{name}': {sorted(unknown)}"
        )
    return sec


def _material(sec: dict, fallback: Material) -> Material:
    if not sec:
        return fallback
    try:
        rho = float(sec.get("density_kg_m3", fallback.rho))
        cs = float(sec.get("shear_wave_speed_m_s", fallback.cs))
        return Material.from_rho_cs(rho=rho, cs=cs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid material parameters: {exc}") from exc


def config_from_dict(data: dict) -> SimConfig:
    """Build and validate a SimConfig from a parsed config mapping."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    top_allowed = {
        "scenario",
        "interface",
        "materials",
        "loading",
        "friction",
        "numerics",
        "output",
    }
    unknown = set(data) - top_allowed
    if unknown:
        raise ConfigError(f"unknown top-level config key(s): {sorted(unknown)}")

    defaults = SimConfig()
    interface = _section(
        data,
        "interface",
        {"length_m", "elements", "barrier_length_m", "nucleation_length_m"},
    )
    materials = _section(data, "materials", {"top", "bottom"})
    loading = _section(
        data,
        "loading",
        {"background_stress_pa", "nucleation_stress_pa", "impulse_magnitude"},
    )
    fric = _section(
        data,
        "friction",
        {
            "peak_strength_pa",
            "residual_strength_pa",
            "critical_slip_m",
            "barrier_strength_pa",
        },
    )
    numerics = _section(
        data,
        "numerics",
        {"courant_beta", "delay_steps", "truncation_gamma"},
    )
    output = _section(
        data,
        "output",
        {"total_time_s", "snapshot_times_s", "probe_positions_m"},
    )

    top = _material(materials.get("top", {}) or {}, defaults.materials.top)
    bottom_sec = materials.get("bottom", {}) or {}
    bottom = _material(bottom_sec, top)

    tau_s = float(fric.get("peak_strength_pa", defaults.law.tau_s))
    tau_r = float(fric.get("residual_strength_pa", defaults.law.tau_r))
    if tau_r > tau_s:
        raise ConfigError(
            f"residual strength {tau_r} exceeds peak {tau_s}"
        )
    try:
        law = SlipWeakeningLaw(
            tau_s=tau_s,
            tau_r=tau_r,
            delta_c=float(fric.get("critical_slip_m", defaults.law.delta_c)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid friction law: {exc}") from exc

    barrier_strength = fric.get("barrier_strength_pa")
    trunc = numerics.get("truncation_gamma", np.inf)
    trunc = np.inf if trunc in (None, "inf", ".inf") else float(trunc)
    try:
        kernel = KernelConfig(
            truncation_gamma=trunc,
            delay_steps=int(numerics.get("delay_steps", 1)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid numerics: {exc}") from exc

    cfg = SimConfig(
        scenario=str(data.get("scenario", defaults.scenario)),
        L=float(interface.get("length_m", defaults.L)),
        N=int(interface.get("elements", defaults.N)),
        L_s=float(interface.get("barrier_length_m", defaults.L_s)),
        L_nuc=float(interface.get("nucleation_length_m", defaults.L_nuc)),
        materials=MaterialPair(top=top, bottom=bottom),
        tau_bg=float(loading.get("background_stress_pa", defaults.tau_bg)),
        tau_nuc=float(loading.get("nucleation_stress_pa", defaults.tau_nuc)),
        impulse_magnitude=float(
            loading.get("impulse_magnitude", defaults.impulse_magnitude)
        ),
        law=law,
        tau_barrier=None if barrier_strength is None else float(barrier_strength),
        beta=float(numerics.get("courant_beta", defaults.beta)),
        kernel=kernel,
        total_time=float(output.get("total_time_s", defaults.total_time)),
        snapshot_times=tuple(
            float(v) for v in output.get("snapshot_times_s", defaults.snapshot_times)
        ),
        probe_positions=tuple(
            float(v)
            for v in output.get("probe_positions_m", defaults.probe_positions)
        ),
    )
    cfg.validate()
    return cfg


def load_config(path) -> tuple[SimConfig, str]:
    """Parse a YAML config file; returns (config, sha256 of file bytes)."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    raw = p.read_bytes()
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {p} is not valid YAML: {exc}") from exc
    cfg = config_from_dict(data)
    return cfg, hashlib.sha256(raw).hexdigest()


def config_to_dict(cfg: SimConfig) -> dict:
    """Config echo for the manifest (includes derived step size)."""
    return {
        "scenario": cfg.scenario,
        "interface": {
            "length_m": cfg.L,
            "elements": cfg.N,
            "barrier_length_m": cfg.L_s,
            "nucleation_length_m": cfg.L_nuc,
        },
        "materials": {
            "top": {
                "shear_modulus_pa": cfg.materials.top.mu,
                "density_kg_m3": cfg.materials.top.rho,
                "shear_wave_speed_m_s": cfg.materials.top.cs,
            },
            "bottom": {
                "shear_modulus_pa": cfg.materials.bottom.mu,
                "density_kg_m3": cfg.materials.bottom.rho,
                "shear_wave_speed_m_s": cfg.materials.bottom.cs,
            },
        },
        "loading": {
            "background_stress_pa": cfg.tau_bg,
            "nucleation_stress_pa": cfg.tau_nuc,
            "impulse_magnitude": cfg.impulse_magnitude,
        },
        "friction": {
            "peak_strength_pa": cfg.law.tau_s,
            "residual_strength_pa": cfg.law.tau_r,
            "critical_slip_m": cfg.law.delta_c,
            "barrier_strength_pa": cfg.tau_barrier_value,
        },
        "numerics": {
            "courant_beta": cfg.beta,
            "delay_steps": cfg.kernel.delay_steps,
            "truncation_gamma": (
                None
                if not np.isfinite(cfg.kernel.truncation_gamma)
                else cfg.kernel.truncation_gamma
            ),
            "dt_s": cfg.dt,
            "steps": cfg.n_steps,
        },
        "output": {
            "total_time_s": cfg.total_time,
            "snapshot_times_s": list(cfg.snapshot_times),
            "probe_positions_m": list(cfg.probe_positions),
        },
    }


def config_hash_from_cfg(cfg: SimConfig) -> str:
    """Hash for programmatic runs (no config file to hash)."""
    blob = json.dumps(config_to_dict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


# -- delimited records ------------------------------------------------------


def write_records(path, meta: dict, header: list, columns: list) -> None:
    """Write metadata lines, a header row, and float columns."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    n = len(cols[0]) if cols else 0
    lines = []
    for key, val in meta.items():
        if isinstance(val, float):
            val = _FLOAT_FMT % val
        lines.append(f"# {key} = {val}")
    lines.append(",".join(header))
    for i in range(n):
        lines.append(",".join(_FLOAT_FMT % c[i] for c in cols))
    Path(path).write_text("\n".join(lines) + "\n")


def read_records(path):
    """Inverse of write_records: returns (meta, header, column arrays)."""
    meta = {}
    header = None
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition("=")
            meta[key.strip()] = val.strip()
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append([float(v) for v in line.split(",")])
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        data = np.zeros((0, len(header or [])))
    columns = [data[:, i] for i in range(data.shape[1])] if data.shape[1] else []
    return meta, header or [], columns


SNAPSHOT_HEADER = ["x1_m", "slip_m", "slip_rate_m_s", "shear_stress_Pa"]
PROBE_HEADER = ["t_s", "slip_rate_m_s"]


def write_snapshot(path, state: InterfaceState, x_centers, config_hash: str) -> None:
    write_records(
        path,
        {"time_s": float(state.t), "config_sha256": config_hash},
        SNAPSHOT_HEADER,
        [x_centers, state.slip, state.slip_rate, state.tau],
    )


def read_snapshot(path):
    """Returns (time_s, config_hash, x, slip, slip_rate, tau)."""
    meta, header, cols = read_records(path)
    if header != SNAPSHOT_HEADER:
        raise ValueError(f"{path} is not a snapshot file (header {header})")
    return (
        float(meta["time_s"]),
        meta.get("config_sha256", ""),
        *cols,
    )


def write_probe(path, probe, config_hash: str) -> None:
    write_records(
        path,
        {
            "position_m": float(probe.position),
            "element": probe.element,
            "config_sha256": config_hash,
        },
        PROBE_HEADER,
        [probe.times, probe.slip_rate],
    )


def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def manifest_payload(
    cfg: SimConfig,
    config_hash: str,
    counters,
    warnings: list,
    started_at: str,
    finished_at: str,
    files: dict,
    extras: dict | None = None,
    error: str | None = None,
) -> dict:
    payload = {
        "code_version": __version__,
        "config": config_to_dict(cfg),
        "config_sha256": config_hash,
        "started_at": started_at,
        "finished_at": finished_at,
        "counters": {
            "steps": counters.steps,
            "kernel_evals": counters.kernel_evals,
            "wall_seconds": counters.wall_seconds,
            "mean_step_seconds": counters.mean_step_seconds,
        },
        "warnings": list(warnings),
        "files": files,
    }
    if extras:
        payload["extras"] = extras
    if error is not None:
        payload["error"] = error
    return payload
