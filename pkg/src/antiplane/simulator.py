"""Explicit time-stepping engine for interface slip dynamics.

Each step advances the interface state from t - dt to t:

1. transform the previous step's stress difference tau - tau0 to
   spectral amplitudes and append them to the per-mode histories,
2. evaluate the memory convolution F(k, t),
3. back-transform to the combination f(x, t) (radiation relation RHS),
4. update slip by explicit Euler with the previous step's slip rate,
5. update the frictional strength from the new slip,
6. solve the radiation relation together with the friction law
   pointwise for the new slip rate and shear stress, with radiation
   coefficient eta * mu / (2 cs) of the top material.

The impulse scenario runs the same engine with a traction-free
interface (tau = 0): the stress amplitudes are the transform of -tau0,
the slip rate comes directly from the radiation relation, and the
impulsive first history entry is pushed at double value so the
trapezoid end weight integrates the full impulse mass.

The k = 0 mode always convolves to zero (kernel prefactor |k|); its
dynamics are pure radiation damping.  Time step dt = beta dx / cs uses
the top material's wave speed; the highest-wavenumber step pi*beta is
logged and a warning is issued above 0.1 (accuracy advisory, values up
to beta = 1 run anyway).
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .convolution import ConvolutionCounters, ModeHistoryBank, convolve_all
from .errors import ConfigError, DivergenceError
from .friction import (
    InterfaceState,
    SlipWeakeningLaw,
    StrengthField,
    background_stress_profile,
    solve_interface_fields,
)
from .grid import Grid, forward, half_to_full, inverse
from .kernels import KernelConfig, KernelTable, Material, MaterialPair, eta

logger = logging.getLogger(__name__)

_DGAMMA_ADVISORY = 0.1

REFERENCE_MATERIAL = Material.from_rho_cs(rho=2670.0, cs=3464.0)
REFERENCE_LAW = SlipWeakeningLaw(tau_s=81.24e6, tau_r=63.0e6, delta_c=0.40)


@dataclass
class SimConfig:
    """Scenario definition; defaults are the reference rupture setup."""

    scenario: str = "rupture"
    L: float = 100e3
    N: int = 1024
    L_s: float = 35e3
    L_nuc: float = 3e3
    materials: MaterialPair = field(
        default_factory=lambda: MaterialPair.identical(REFERENCE_MATERIAL)
    )
    tau_bg: float = 70.0e6
    tau_nuc: float = 81.6e6
    impulse_magnitude: float = 1.0
    law: SlipWeakeningLaw = field(default_factory=lambda: REFERENCE_LAW)
    tau_barrier: float | None = None
    beta: float = 0.3
    kernel: KernelConfig = field(default_factory=lambda: KernelConfig(delay_steps=1))
    total_time: float = 5.0
    snapshot_times: tuple = (1.0, 2.0, 3.0, 4.0, 5.0)
    probe_positions: tuple = (4500.0,)
    force_general_kernel: bool = False

    def validate(self) -> None:
        if self.scenario not in ("rupture", "impulse"):
            raise ConfigError(f"unknown scenario '{self.scenario}'")
        if not (0.0 < self.beta <= 1.0):
            raise ConfigError(
                f"Courant parameter beta must be in (0, 1], got {self.beta}"
            )
        n = self.N
        if n <= 0 or (n & (n - 1)) != 0:
            raise ConfigError(f"element count N must be a power of two, got {n}")
        if self.scenario == "rupture" and self.L_nuc + 2.0 * self.L_s >= self.L:
            raise ConfigError(
                "nucleation zone and barriers exceed the interface: "
                f"L_nuc + 2 L_s = {self.L_nuc + 2 * self.L_s} >= L = {self.L}"
            )
        if self.law.tau_r > self.law.tau_s:
            raise ConfigError(
                f"residual strength {self.law.tau_r} exceeds peak {self.law.tau_s}"
            )
        if self.total_time < 0.0:
            raise ConfigError("total_time must be nonnegative")

    @property
    def dt(self) -> float:
        return self.beta * (self.L / self.N) / self.materials.top.cs

    @property
    def n_steps(self) -> int:
        if self.total_time == 0.0:
            return 0
        return int(math.ceil(self.total_time / self.dt - 1e-12))

    @property
    def tau_barrier_value(self) -> float:
        return 1e3 * self.law.tau_s if self.tau_barrier is None else self.tau_barrier


@dataclass
class ProbeSeries:
    """Per-step samples at the element containing one probe position."""

    position: float
    element: int
    times: list = field(default_factory=list)
    slip_rate: list = field(default_factory=list)
    slip: list = field(default_factory=list)

    def record(self, state: InterfaceState) -> None:
        self.times.append(state.t)
        self.slip_rate.append(float(state.slip_rate[self.element]))
        self.slip.append(float(state.slip[self.element]))


@dataclass
class RunCounters:
    steps: int = 0
    kernel_evals: int = 0
    wall_seconds: float = 0.0

    @property
    def mean_step_seconds(self) -> float:
        return self.wall_seconds / self.steps if self.steps else 0.0


@dataclass
class RunResult:
    config: SimConfig
    final_state: InterfaceState
    snapshots: list
    probes: list
    counters: RunCounters
    warnings: list


class Engine:
    """Single-owner state machine advancing one scenario."""

    def __init__(self, cfg: SimConfig):
        cfg.validate()
        self.cfg = cfg
        self.grid = Grid(cfg.L, cfg.N)
        self.dt = cfg.dt
        self.n_steps = cfg.n_steps
        pair = cfg.materials
        self.eta = eta(pair)
        self.radiation_coeff = self.eta * pair.top.mu / (2.0 * pair.top.cs)
        self.table = KernelTable.build(
            pair,
            self.grid.k_abs_half,
            self.dt,
            self.n_steps,
            cfg.kernel,
            force_bimaterial=cfg.force_general_kernel,
        )
        self.bank = ModeHistoryBank(cfg.N // 2 + 1, max(self.n_steps, 1))
        self.counters = ConvolutionCounters()
        # Hermitian pairing: interior modes represent themselves and their
        # negative-k partner in the nominal cost model.
        mult = np.full(cfg.N // 2 + 1, 2, dtype=int)
        mult[0] = 1
        mult[-1] = 1
        self._multiplicity = mult
        self.nominal_kernel_evals = 0
        self.warnings: list[str] = []
        dgamma_max = np.pi * cfg.beta
        if dgamma_max > _DGAMMA_ADVISORY:
            msg = (
                f"highest-wavenumber step dgamma_max = pi*beta = {dgamma_max:.3f} "
                f"exceeds {_DGAMMA_ADVISORY}; expect numerical damping of the "
                "shortest wavelengths"
            )
            logger.warning(msg)
            self.warnings.append(msg)
        if np.isfinite(cfg.kernel.truncation_gamma):
            # |C(gamma)| <= min(gamma/2, 0.9), so each excluded history
            # entry contributes at most 0.9 |k| c_s dt |T| to F
            kc_max = float(self.grid.k_abs_half[-1]) * pair.cs_min
            msg = (
                f"history truncation at gamma = {cfg.kernel.truncation_gamma:g}: "
                f"dropped-entry contribution bounded by 0.9*|k|*c_s*dt*|T| "
                f"<= {0.9 * kc_max * self.dt:.3e} per pascal of excluded stress"
            )
            logger.warning(msg)
            self.warnings.append(msg)

        if cfg.scenario == "rupture":
            self.tau0 = background_stress_profile(self.grid, _RuptureLoading(cfg))
            self.strength_field = StrengthField.build(
                self.grid, cfg.law, cfg.L_s, cfg.tau_barrier_value
            )
        else:
            self.tau0 = self._impulse_tau0(0)
            self.strength_field = None

    # -- loading ---------------------------------------------------------

    def _impulse_tau0(self, step: int) -> np.ndarray:
        out = np.zeros(self.cfg.N)
        if step == 0:
            j = self.grid.element_index(0.0)
            out[j] = self.cfg.impulse_magnitude / (self.grid.dx * self.dt)
        return out

    # -- state -----------------------------------------------------------

    def initial_state(self) -> InterfaceState:
        n = self.cfg.N
        if self.cfg.scenario == "rupture":
            slip = np.zeros(n)
            tau = np.minimum(self.tau0, self.strength_field.evaluate(slip))
            return InterfaceState(
                slip=slip,
                slip_rate=np.zeros(n),
                tau=tau,
                tau0=self.tau0.copy(),
                t=0.0,
            )
        # traction-free interface: instantaneous radiation response to the
        # impulsive background stress
        T0 = forward(self.grid, -self.tau0)
        pair = self.cfg.materials
        ddot = -(2.0 * pair.top.cs / pair.top.mu) * self.eta * T0
        rate = inverse(self.grid, ddot)
        return InterfaceState(
            slip=np.zeros(n),
            slip_rate=rate,
            tau=np.zeros(n),
            tau0=self.tau0.copy(),
            t=0.0,
        )

    # -- stepping --------------------------------------------------------

    def _convolve(self) -> np.ndarray:
        L = self.bank.length
        w = self.table.window_steps
        spans = np.where(w < 0, L, np.minimum(L, w))
        self.nominal_kernel_evals += int((self._multiplicity * spans).sum())
        F_half = convolve_all(self.bank, self.table, self.dt, counters=self.counters)
        return half_to_full(self.grid, F_half)

    def step_rupture(self, state: InterfaceState) -> InterfaceState:
        n = self.bank.length + 1
        t = n * self.dt
        half = self.cfg.N // 2 + 1
        T_prev = forward(self.grid, state.tau - state.tau0)
        self.bank.push(T_prev[:half], step=n - 1)
        F = self._convolve()
        f = inverse(self.grid, F)
        if not np.all(np.isfinite(f)):
            raise DivergenceError(
                f"non-finite convolution field at step {n}", step=n, phase="convolution"
            )
        slip = np.maximum(state.slip + state.slip_rate * self.dt, 0.0)
        tau_f = self.strength_field.evaluate(slip)
        rate, tau = solve_interface_fields(
            f,
            state.tau0,
            tau_f,
            self.radiation_coeff,
            slip,
            self.cfg.law.delta_c,
            self.cfg.law.tau_r,
        )
        if not (np.all(np.isfinite(rate)) and np.all(np.isfinite(tau))):
            raise DivergenceError(
                f"non-finite interface fields at step {n}", step=n, phase="interface solve"
            )
        self.last_f = f
        return InterfaceState(slip=slip, slip_rate=rate, tau=tau, tau0=state.tau0, t=t)

    def step_impulse(self, state: InterfaceState) -> InterfaceState:
        n = self.bank.length + 1
        t = n * self.dt
        half = self.cfg.N // 2 + 1
        tau0_prev = self._impulse_tau0(n - 1)
        T_prev = forward(self.grid, state.tau - tau0_prev)
        if n - 1 == 0:
            # impulsive entry sits on the trapezoid end node (weight 1/2):
            # double it so the discrete integral carries the full mass
            T_prev = 2.0 * T_prev
        self.bank.push(T_prev[:half], step=n - 1)
        F = self._convolve()
        pair = self.cfg.materials
        tau0_now = self._impulse_tau0(n)
        T_now = forward(self.grid, state.tau - tau0_now)
        ddot = (2.0 * pair.top.cs / pair.top.mu) * (F - self.eta * T_now)
        rate = inverse(self.grid, ddot)
        slip = state.slip + state.slip_rate * self.dt
        if not (np.all(np.isfinite(rate)) and np.all(np.isfinite(slip))):
            raise DivergenceError(
                f"non-finite fields at step {n}", step=n, phase="impulse update"
            )
        self.last_f = inverse(self.grid, F)
        return InterfaceState(
            slip=slip,
            slip_rate=rate,
            tau=np.zeros(self.cfg.N),
            tau0=tau0_now,
            t=t,
        )

    def step(self, state: InterfaceState) -> InterfaceState:
        if self.cfg.scenario == "rupture":
            return self.step_rupture(state)
        return self.step_impulse(state)


def run(cfg: SimConfig) -> RunResult:
    """Run a scenario to total_time.

    Emits a snapshot at the first step reaching each requested time
    (total_time = 0 emits the initial state as the only snapshot),
    records every probe each step, and fills the performance counters.
    On divergence the error propagates with the last good state and the
    partial result attached.
    """
    engine = Engine(cfg)
    state = engine.initial_state()
    probes = [
        ProbeSeries(position=p, element=engine.grid.element_index(p))
        for p in cfg.probe_positions
    ]
    for p in probes:
        p.record(state)
    snapshots: list[InterfaceState] = []
    counters = RunCounters()
    if cfg.total_time == 0.0 or engine.n_steps == 0:
        snapshots.append(state.copy())
        return RunResult(cfg, state, snapshots, probes, counters, engine.warnings)

    pending = sorted(ts for ts in cfg.snapshot_times if ts <= cfg.total_time + 1e-12)
    if any(ts <= 0.0 for ts in pending):
        snapshots.append(state.copy())
        pending = [ts for ts in pending if ts > 0.0]

    t_start = time.perf_counter()
    try:
        for n in range(1, engine.n_steps + 1):
            state = engine.step(state)
            for p in probes:
                p.record(state)
            while pending and state.t >= pending[0] - 1e-9:
                snapshots.append(state.copy())
                pending.pop(0)
    except DivergenceError as exc:
        counters.steps = engine.bank.length
        counters.kernel_evals = engine.nominal_kernel_evals
        counters.wall_seconds = time.perf_counter() - t_start
        exc.last_good_state = state
        exc.result_so_far = RunResult(
            cfg, state, snapshots, probes, counters, engine.warnings
        )
        raise
    counters.steps = engine.n_steps
    counters.kernel_evals = engine.nominal_kernel_evals
    counters.wall_seconds = time.perf_counter() - t_start
    return RunResult(cfg, state, snapshots, probes, counters, engine.warnings)


class _RuptureLoading:
    """Adapter giving background_stress_profile its field names."""

    def __init__(self, cfg: SimConfig):
        self.L_nuc = cfg.L_nuc
        self.L_s = cfg.L_s
        self.tau_nuc = cfg.tau_nuc
        self.tau_bg = cfg.tau_bg
