"""Linear slip-weakening friction and the pointwise interface solve.

Strength drops linearly from tau_s to tau_r over the critical slip
delta_c and stays at tau_r beyond.  High-strength barrier zones at both
interface ends override the law with a large constant strength.

The pointwise solve couples the instantaneous radiation relation

    radiation_coeff * slip_rate + tau - tau0 = f

with the friction law, via exactly one of three branches:
(a) slip >= delta_c: sliding at residual strength,
(b) strength exceeds the driving stress: stuck,
(c) otherwise: sliding at the current strength.
The radiation relation holds exactly in every branch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grid import Grid


@dataclass(frozen=True)
class SlipWeakeningLaw:
    """Peak strength tau_s, residual tau_r (Pa), critical slip delta_c (m)."""

    tau_s: float
    tau_r: float
    delta_c: float

    def __post_init__(self):
        if self.tau_r < 0.0 or self.tau_s < self.tau_r:
            raise ValueError("SlipWeakeningLaw: need tau_s >= tau_r >= 0")
        if not (self.delta_c > 0.0):
            raise ValueError("SlipWeakeningLaw: delta_c must be positive")


def strength(law: SlipWeakeningLaw, slip):
    """Frictional strength at the given slip (piecewise linear, Pa)."""
    s = np.asarray(slip, dtype=float)
    if np.any(s < 0.0):
        raise ValueError("strength: slip must be nonnegative")
    out = np.where(
        s < law.delta_c,
        law.tau_s - (law.tau_s - law.tau_r) * s / law.delta_c,
        law.tau_r,
    )
    return out if isinstance(slip, np.ndarray) else float(out)


@dataclass(frozen=True)
class StrengthField:
    """Per-element law parameters with barrier overrides.

    Barrier zones span the elements whose centers lie within barrier_len
    of either interface end; there the strength is the constant
    tau_barrier regardless of slip.
    """

    law: SlipWeakeningLaw
    barrier_mask: np.ndarray
    tau_barrier: float

    @classmethod
    def build(
        cls,
        grid: Grid,
        law: SlipWeakeningLaw,
        barrier_len: float,
        tau_barrier: float,
    ) -> "StrengthField":
        if not (0.0 <= barrier_len < grid.L / 2):
            raise ConfigError("StrengthField: barrier length must fit the interface")
        mask = np.abs(grid.x_centers) >= grid.L / 2 - barrier_len
        return cls(law=law, barrier_mask=mask, tau_barrier=tau_barrier)

    def evaluate(self, slip: np.ndarray) -> np.ndarray:
        """Strength profile for the given slip field."""
        return np.where(self.barrier_mask, self.tau_barrier, strength(self.law, slip))


@dataclass
class InterfaceState:
    """Fields on the interface at time t: slip (m), slip_rate (m/s),
    shear stress tau (Pa) and background stress tau0 (Pa)."""

    slip: np.ndarray
    slip_rate: np.ndarray
    tau: np.ndarray
    tau0: np.ndarray
    t: float = 0.0

    def copy(self) -> "InterfaceState":
        return InterfaceState(
            slip=self.slip.copy(),
            slip_rate=self.slip_rate.copy(),
            tau=self.tau.copy(),
            tau0=self.tau0.copy(),
            t=self.t,
        )


def solve_interface(
    f: float,
    tau0: float,
    tau_f: float,
    radiation_coeff: float,
    slip: float,
    delta_c: float,
    tau_r: float,
):
    """Pointwise slip-rate/stress solve. Returns (slip_rate, tau).

    Exactly one branch fires; the identity
    radiation_coeff*slip_rate + tau - tau0 = f holds in all of them.
    """
    if not (radiation_coeff > 0.0):
        raise ValueError("solve_interface: radiation_coeff must be positive")
    drive = tau0 + f
    if slip >= delta_c:
        return (drive - tau_r) / radiation_coeff, tau_r
    if tau_f > drive:
        return 0.0, drive
    return (drive - tau_f) / radiation_coeff, tau_f


def solve_interface_fields(
    f: np.ndarray,
    tau0: np.ndarray,
    tau_f: np.ndarray,
    radiation_coeff: float,
    slip: np.ndarray,
    delta_c: float,
    tau_r: float,
):
    """Vectorized twin of solve_interface over whole fields."""
    drive = tau0 + f
    at_residual = slip >= delta_c
    stuck = ~at_residual & (tau_f > drive)
    tau = np.where(at_residual, tau_r, np.where(stuck, drive, tau_f))
    rate = np.where(
        at_residual,
        (drive - tau_r) / radiation_coeff,
        np.where(stuck, 0.0, (drive - tau_f) / radiation_coeff),
    )
    return rate, tau


def background_stress_profile(grid: Grid, cfg) -> np.ndarray:
    """Background shear stress: tau_nuc on the central nucleation patch
    of length L_nuc, tau_bg elsewhere.  Even about the interface center."""
    if cfg.L_nuc >= grid.L - 2.0 * cfg.L_s:
        raise ConfigError(
            "background_stress_profile: nucleation zone must fit between barriers "
            f"(L_nuc={cfg.L_nuc}, L_s={cfg.L_s}, L={grid.L})"
        )
    return np.where(
        np.abs(grid.x_centers) <= cfg.L_nuc / 2.0, cfg.tau_nuc, cfg.tau_bg
    )
