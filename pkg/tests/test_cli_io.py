"""Config parsing, file formats, and the CLI surface."""

import json

import numpy as np
import pytest

from antiplane import ConfigError, Grid, InterfaceState, SimConfig
from antiplane.cli import cli
from antiplane.io import (
    config_from_dict,
    config_hash_from_cfg,
    load_config,
    read_records,
    read_snapshot,
    write_probe,
    write_records,
    write_snapshot,
)
from antiplane.simulator import ProbeSeries

def small_config_yaml(n=64, total="0.05", extra=""):
    return f"""
scenario: rupture
interface:
  elements: {n}
output:
  total_time_s: {total}
  snapshot_times_s: [{total}]
  probe_positions_m: [4500.0]
{extra}
"""


# -- config ------------------------------------------------------------------


def test_defaults_reproduce_reference_parameters():
    cfg = SimConfig()
    assert cfg.materials.top.cs == 3464.0
    assert cfg.materials.top.rho == 2670.0
    assert cfg.materials.top.mu == pytest.approx(2670.0 * 3464.0**2)
    assert cfg.tau_bg == 70.0e6
    assert cfg.tau_nuc == 81.6e6
    assert cfg.L == 100e3
    assert cfg.L_s == 35e3
    assert cfg.L_nuc == 3e3
    assert cfg.N == 1024
    assert cfg.beta == 0.3
    assert cfg.law.tau_s == 81.24e6
    assert cfg.law.tau_r == 63.0e6
    assert cfg.law.delta_c == 0.40
    assert cfg.kernel.delay_steps == 1
    assert cfg.total_time == 5.0


def test_empty_config_is_reference_setup(tmp_path):
    p = tmp_path / "empty.yaml"
    p.write_text("{}\n")
    cfg, digest = load_config(p)
    assert cfg == SimConfig()
    assert len(digest) == 64


def test_missing_config_names_path(tmp_path):
    missing = tmp_path / "nope.yaml"
    with pytest.raises(ConfigError, match="nope.yaml"):
        load_config(missing)


def test_invalid_yaml_rejected(tmp_path):
    p = tmp_path / "bad.yaml"
    p.write_text("interface: [unclosed\n")
    with pytest.raises(ConfigError, match="YAML"):
        load_config(p)


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="unknown"):
        config_from_dict({"interace": {}})
    with pytest.raises(ConfigError, match="unknown"):
        config_from_dict({"interface": {"lenght_m": 1.0}})


@pytest.mark.parametrize(
    "data,pattern",
    [
        ({"numerics": {"courant_beta": 1.5}}, "Courant"),
        ({"interface": {"elements": 1000}}, "power of two"),
        ({"interface": {"nucleation_length_m": 31e3}}, "exceed"),
        (
            {"friction": {"peak_strength_pa": 60e6, "residual_strength_pa": 63e6}},
            "residual",
        ),
    ],
)
def test_distinct_validation_messages(data, pattern):
    with pytest.raises(ConfigError, match=pattern):
        config_from_dict(data)


def test_bimaterial_config_parsed():
    cfg = config_from_dict(
        {
            "materials": {
                "bottom": {"density_kg_m3": 5340.0, "shear_wave_speed_m_s": 1732.0}
            }
        }
    )
    assert cfg.materials.bottom.cs == 1732.0
    assert cfg.materials.top.cs == 3464.0


# -- file formats -------------------------------------------------------------


def test_records_roundtrip_bit_exact(tmp_path, rng):
    cols = [rng.normal(size=17) * 10.0 ** rng.integers(-200, 200, 17)]
    cols.append(rng.normal(size=17))
    path = tmp_path / "r.csv"
    write_records(path, {"alpha": 1.25, "tag": "x"}, ["a", "b"], cols)
    meta, header, back = read_records(path)
    assert header == ["a", "b"]
    assert meta["tag"] == "x"
    assert np.array_equal(back[0], cols[0])
    assert np.array_equal(back[1], cols[1])


def test_snapshot_roundtrip(tmp_path, rng):
    grid = Grid(100e3, 64)
    state = InterfaceState(
        slip=rng.normal(size=64) ** 2,
        slip_rate=rng.normal(size=64),
        tau=rng.normal(size=64) * 1e7,
        tau0=np.zeros(64),
        t=1.234567891234,
    )
    path = tmp_path / "snap.csv"
    write_snapshot(path, state, grid.x_centers, "cafe" * 16)
    t, digest, x, slip, rate, tau = read_snapshot(path)
    assert t == state.t
    assert digest == "cafe" * 16
    assert np.array_equal(x, grid.x_centers)
    assert np.array_equal(slip, state.slip)
    assert np.array_equal(rate, state.slip_rate)
    assert np.array_equal(tau, state.tau)


def test_zero_state_snapshot(tmp_path):
    grid = Grid(10.0, 8)
    state = InterfaceState(
        slip=np.zeros(8), slip_rate=np.zeros(8), tau=np.zeros(8), tau0=np.zeros(8)
    )
    path = tmp_path / "zero.csv"
    write_snapshot(path, state, grid.x_centers, "00")
    _, _, _, slip, rate, tau = read_snapshot(path)
    assert np.all(slip == 0.0) and np.all(rate == 0.0) and np.all(tau == 0.0)


def test_probe_file(tmp_path):
    probe = ProbeSeries(position=4500.0, element=12)
    probe.times = [0.0, 0.5]
    probe.slip_rate = [0.0, 1.5]
    probe.slip = [0.0, 0.1]
    path = tmp_path / "probe.csv"
    write_probe(path, probe, "ff")
    meta, header, cols = read_records(path)
    assert header == ["t_s", "slip_rate_m_s"]
    assert float(meta["position_m"]) == 4500.0
    assert np.array_equal(cols[1], [0.0, 1.5])


# -- CLI ----------------------------------------------------------------------


def test_cli_unknown_flag_exits_one(capsys):
    assert cli(["simulate", "--bogus"]) == 1
    assert "usage" in capsys.readouterr().err.lower()


def test_cli_unknown_command_exits_one(capsys):
    assert cli(["frobnicate"]) == 1


def test_cli_missing_config_exits_two(tmp_path, capsys):
    rc = cli(
        ["simulate", "--config", str(tmp_path / "ghost.yaml"), "--out", str(tmp_path)]
    )
    assert rc == 2
    assert "ghost.yaml" in capsys.readouterr().err


def test_cli_invalid_config_exits_two(tmp_path, capsys):
    p = tmp_path / "bad.yaml"
    p.write_text("numerics: {courant_beta: 2.0}\n")
    assert cli(["simulate", "--config", str(p), "--out", str(tmp_path / "o")]) == 2


def test_cli_simulate_writes_expected_files(tmp_path):
    p = tmp_path / "cfg.yaml"
    p.write_text(small_config_yaml())
    out = tmp_path / "out"
    assert cli(["simulate", "--config", str(p), "--out", str(out)]) == 0
    assert (out / "snapshot_0000.csv").is_file()
    assert (out / "probe_0000.csv").is_file()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["code_version"]
    assert manifest["counters"]["steps"] > 0
    assert manifest["counters"]["kernel_evals"] > 0
    assert manifest["config"]["interface"]["elements"] == 64
    assert len(manifest["files"]["snapshots"]) == 1
    assert any("dgamma_max" in w for w in manifest["warnings"])


def test_cli_simulate_deterministic_outputs(tmp_path):
    p = tmp_path / "cfg.yaml"
    p.write_text(small_config_yaml())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli(["simulate", "--config", str(p), "--out", str(out1)]) == 0
    assert cli(["simulate", "--config", str(p), "--out", str(out2)]) == 0
    for name in ("snapshot_0000.csv", "probe_0000.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_cli_verify_modal(tmp_path):
    out = tmp_path / "modal.csv"
    rc = cli(
        ["verify-modal", "--dgamma", "0.1", "--gamma-max", "30", "--out", str(out)]
    )
    assert rc == 0
    meta, header, cols = read_records(out)
    assert header == ["gamma", "r_numeric", "r_analytic", "deviation"]
    assert float(meta["max_deviation"]) <= 0.02
    assert len(cols[0]) == 301


def test_cli_verify_kernels(tmp_path):
    out = tmp_path / "kernels.csv"
    assert cli(["verify-kernels", "--out", str(out)]) == 0
    meta, header, cols = read_records(out)
    assert int(float(meta["failed"])) == 0
    assert "passed" in header


def test_cli_verify_impulse(tmp_path):
    p = tmp_path / "imp.yaml"
    p.write_text(
        """
scenario: impulse
interface: {length_m: 256.0, elements: 256}
materials:
  top: {density_kg_m3: 1.0, shear_wave_speed_m_s: 1.0}
loading: {impulse_magnitude: 1.0}
numerics: {courant_beta: 0.5, delay_steps: 0}
output:
  total_time_s: 100.0
  snapshot_times_s: []
  probe_positions_m: [24.0]
"""
    )
    out = tmp_path / "imp_out"
    assert cli(["verify-impulse", "--config", str(p), "--out", str(out)]) == 0
    meta, header, cols = read_records(out / "impulse_comparison.csv")
    assert header == ["t_s", "slip_numeric_m", "slip_reference_m"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert "fitted_amplitude" in manifest["extras"]


def test_config_hash_is_stable():
    assert config_hash_from_cfg(SimConfig()) == config_hash_from_cfg(SimConfig())


def test_cli_default_run_emits_requested_snapshots(tmp_path):
    # full default scenario: exactly one snapshot file per requested time
    p = tmp_path / "ref.yaml"
    p.write_text("{}\n")
    out = tmp_path / "out"
    assert cli(["simulate", "--config", str(p), "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    snaps = manifest["files"]["snapshots"]
    assert len(snaps) == 5
    times = [s["time_s"] for s in snaps]
    dt = manifest["config"]["numerics"]["dt_s"]
    for got, want in zip(times, (1.0, 2.0, 3.0, 4.0, 5.0)):
        assert 0.0 <= got - want <= dt
    for s in snaps:
        assert (out / s["path"]).is_file()
