"""Command-line interface.

Subcommands:
  simulate        rupture or impulse scenario from a config file
  verify-modal    marching vs analytic modal response table
  verify-impulse  impulse run vs the analytic slip response
  verify-kernels  Laplace-identity and bimaterial-reduction checks

Exit codes: 0 success, 1 usage error, 2 config error, 3 numerical
divergence or failed verification.

The worker-thread count for the numerical backend is taken from
ANTIPLANE_NUM_THREADS (default: machine parallelism); it is applied to
the BLAS/OpenMP pools before the numerical modules load and recorded in
the manifest.  Outputs are deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import datetime
import os
import sys

_THREAD_ENV = "ANTIPLANE_NUM_THREADS"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; the CLI contract wants 1.
    def error(self, message):
        raise _UsageError(message)


def _apply_thread_env():
    n = os.environ.get(_THREAD_ENV)
    if n:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, n)
    return n


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _build_parser() -> _Parser:
    parser = _Parser(prog="antiplane", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario from a config file")
    p.add_argument("--config", required=True, help="YAML config file")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("verify-modal", help="modal marching vs analytic table")
    p.add_argument("--dgamma", type=float, required=True)
    p.add_argument("--gamma-max", type=float, required=True)
    p.add_argument("--delay-steps", type=int, default=0)
    p.add_argument("--out", required=True, help="output table file")

    p = sub.add_parser("verify-impulse", help="impulse run vs analytic slip")
    p.add_argument("--config", required=True, help="YAML config file")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("verify-kernels", help="kernel identity checks")
    p.add_argument("--out", required=True, help="output table file")
    return parser


def _cmd_simulate(args) -> int:
    from pathlib import Path

    from . import io as aio
    from .errors import DivergenceError
    from .simulator import run

    cfg, config_hash = aio.load_config(args.config)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    started = _now()
    error = None
    try:
        result = run(cfg)
        exit_code = EXIT_OK
    except DivergenceError as exc:
        result = exc.result_so_far
        error = str(exc)
        exit_code = EXIT_NUMERICAL
    finished = _now()

    files = {"snapshots": [], "probes": []}
    for i, snap in enumerate(result.snapshots):
        name = f"snapshot_{i:04d}.csv"
        aio.write_snapshot(outdir / name, snap, _grid_x(cfg), config_hash)
        files["snapshots"].append({"path": name, "time_s": snap.t})
    if error is not None:
        name = "snapshot_diverged_last_good.csv"
        aio.write_snapshot(
            outdir / name, result.final_state, _grid_x(cfg), config_hash
        )
        files["snapshots"].append({"path": name, "time_s": result.final_state.t})
    for i, probe in enumerate(result.probes):
        name = f"probe_{i:04d}.csv"
        aio.write_probe(outdir / name, probe, config_hash)
        files["probes"].append({"path": name, "position_m": probe.position})
    payload = aio.manifest_payload(
        cfg,
        config_hash,
        result.counters,
        result.warnings,
        started,
        finished,
        files,
        extras={"threads_env": os.environ.get(_THREAD_ENV)},
        error=error,
    )
    aio.write_manifest(outdir / "manifest.json", payload)
    return exit_code


def _grid_x(cfg):
    from .grid import Grid

    return Grid(cfg.L, cfg.N).x_centers


def _cmd_verify_modal(args) -> int:
    import numpy as np

    from . import io as aio
    from .oracles import modal_analytic_closed_form, modal_volterra

    delay_gamma = args.delay_steps * args.dgamma
    run_ = modal_volterra(args.dgamma, args.gamma_max, delay_gamma)
    analytic = modal_analytic_closed_form(run_.gammas)
    deviation = np.abs(run_.r - analytic) / np.maximum(1.0, analytic)
    aio.write_records(
        args.out,
        {
            "dgamma": args.dgamma,
            "gamma_max": args.gamma_max,
            "delay_gamma": delay_gamma,
            "max_deviation": float(deviation.max()),
        },
        ["gamma", "r_numeric", "r_analytic", "deviation"],
        [run_.gammas, run_.r, analytic, deviation],
    )
    return EXIT_OK


def _cmd_verify_impulse(args) -> int:
    from pathlib import Path

    import numpy as np

    from . import io as aio
    from .oracles import impulse_analytic
    from .simulator import run

    cfg, config_hash = aio.load_config(args.config)
    if cfg.scenario != "impulse":
        from .errors import ConfigError

        raise ConfigError("verify-impulse requires an impulse-scenario config")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    started = _now()
    result = run(cfg)
    finished = _now()

    probe = result.probes[0]
    X = abs(probe.position)
    mu = cfg.materials.top.mu
    cs = cfg.materials.top.cs
    t = np.asarray(probe.times)
    slip = np.asarray(probe.slip)
    reference = impulse_analytic(X, t, mu, cs)

    # single amplitude constant fitted at the sample nearest t = 2X/cs
    i_fit = int(np.argmin(np.abs(t - 2.0 * X / cs)))
    fitted = float(slip[i_fit] / reference[i_fit])
    window = (t >= 1.5 * X / cs) & (t <= 4.0 * X / cs)
    ref_w = fitted * reference[window]
    num_w = slip[window]
    rel_l2 = float(np.linalg.norm(num_w - ref_w) / np.linalg.norm(ref_w))
    rel_sup = float(np.abs(num_w - ref_w).max() / np.abs(ref_w).max())

    aio.write_records(
        outdir / "impulse_comparison.csv",
        {
            "position_m": X,
            "fitted_amplitude": fitted,
            "rel_l2_error": rel_l2,
            "rel_sup_error": rel_sup,
            "config_sha256": config_hash,
        },
        ["t_s", "slip_numeric_m", "slip_reference_m"],
        [t, slip, np.where(np.isfinite(reference), fitted * reference, 0.0)],
    )
    payload = aio.manifest_payload(
        cfg,
        config_hash,
        result.counters,
        result.warnings,
        started,
        finished,
        {"comparison": "impulse_comparison.csv"},
        extras={
            "fitted_amplitude": fitted,
            "rel_l2_error": rel_l2,
            "rel_sup_error": rel_sup,
        },
    )
    aio.write_manifest(outdir / "manifest.json", payload)
    return EXIT_OK


def _cmd_verify_kernels(args) -> int:
    import numpy as np

    from . import io as aio
    from .kernels import (
        Material,
        MaterialPair,
        eta,
        kernel_bimaterial,
        kernel_hat_identical,
        kernel_identical,
    )
    from .specfun import laplace_transform_numeric

    names, params, numeric, reference = [], [], [], []

    for p in (0.5, 1.0, 2.0):
        val = laplace_transform_numeric(kernel_identical, p, 500.0)
        ref = kernel_hat_identical(1.0, p, 1.0)
        names.append("laplace_identity")
        params.append(p)
        numeric.append(val)
        reference.append(ref)

    rng = np.random.default_rng(20)
    for i in range(3):
        m = Material.from_rho_cs(rho=rng.uniform(1e3, 5e3), cs=rng.uniform(1e3, 6e3))
        pair = MaterialPair.identical(m)
        k = rng.uniform(1e-4, 1e-2)
        t = rng.uniform(0.0, 5.0 / (k * m.cs))
        names.append("bimaterial_reduction")
        params.append(k)
        numeric.append(kernel_bimaterial(pair, k, t))
        reference.append(k * m.cs * kernel_identical(k * m.cs * t))

    base = Material(mu=1.0, rho=1.0, cs=1.0)
    for factor in (2.0, 0.5):
        other = Material.from_rho_cs(rho=base.rho / factor, cs=factor * base.cs)
        names.append("eta_matched_impedance")
        params.append(factor)
        numeric.append(eta(MaterialPair(top=base, bottom=other)))
        reference.append(1.0)

    numeric = np.asarray(numeric)
    reference = np.asarray(reference)
    err = np.abs(numeric - reference)
    tol = np.where(
        np.asarray(names) == "laplace_identity",
        1e-6,
        1e-12 * np.maximum(1.0, np.abs(reference)),
    )
    ok = err <= tol
    aio.write_records(
        args.out,
        {"checks": len(names), "failed": int((~ok).sum())},
        ["check_index", "parameter", "numeric", "reference", "abs_error", "passed"],
        [np.arange(len(names)), params, numeric, reference, err, ok.astype(float)],
    )
    with open(args.out, "a") as fh:
        fh.write("# names = " + ",".join(names) + "\n")
    return EXIT_OK if ok.all() else EXIT_NUMERICAL


def cli(argv=None) -> int:
    """Entry point; returns the process exit code."""
    _apply_thread_env()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    from .errors import ConfigError, DivergenceError, InstabilityError

    handler = {
        "simulate": _cmd_simulate,
        "verify-modal": _cmd_verify_modal,
        "verify-impulse": _cmd_verify_impulse,
        "verify-kernels": _cmd_verify_kernels,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (DivergenceError, InstabilityError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(cli())
