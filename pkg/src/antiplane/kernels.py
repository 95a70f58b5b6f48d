"""Elastodynamic memory kernels for the stress-history convolution.

For matched half-planes the per-mode kernel is |k| c_s J1(|k| c_s t); in
nondimensional time gamma = |k| c_s t its shape is C(gamma) = J1(gamma).
For a bimaterial interface the kernel combines both shear wave speeds,

    K(k, t) = (|k|/2) [ c_s J1(|k| c_s t)
                        + (c_s'/c_s)(mu/mu') c_s' J1(|k| c_s' t) ],

and the instantaneous radiation term is scaled by
eta = (1 + (c_s'/c_s)(mu/mu'))/2.  The Laplace-domain form
C_hat = 1 - 1/sqrt(1 + |k|^2 c_s^2 / p^2) is kept for verification.

Kernel values are precomputed per mode on the uniform time lattice once
per run (KernelTable); the tables are immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .specfun import bessel_j1

_REL_TOL = 1e-12


@dataclass(frozen=True)
class Material:
    """Elastic half-plane: shear modulus (Pa), density (kg/m^3), shear
    wave speed (m/s).  cs must equal sqrt(mu/rho)."""

    mu: float
    rho: float
    cs: float

    def __post_init__(self):
        if not (self.mu > 0.0 and self.rho > 0.0 and self.cs > 0.0):
            raise ValueError("Material: mu, rho, cs must be positive")
        ref = np.sqrt(self.mu / self.rho)
        if abs(self.cs - ref) > _REL_TOL * ref:
            raise ValueError(
                f"Material: cs={self.cs} inconsistent with sqrt(mu/rho)={ref}"
            )

    @classmethod
    def from_rho_cs(cls, rho: float, cs: float) -> "Material":
        return cls(mu=rho * cs * cs, rho=rho, cs=cs)


@dataclass(frozen=True)
class MaterialPair:
    """top: half-plane above the interface (unprimed); bottom: below."""

    top: Material
    bottom: Material

    @classmethod
    def identical(cls, m: Material) -> "MaterialPair":
        return cls(top=m, bottom=m)

    @property
    def is_identical(self) -> bool:
        return (
            self.top.mu == self.bottom.mu
            and self.top.rho == self.bottom.rho
            and self.top.cs == self.bottom.cs
        )

    @property
    def cs_min(self) -> float:
        return min(self.top.cs, self.bottom.cs)


@dataclass(frozen=True)
class KernelConfig:
    """Convolution window controls.

    truncation_gamma: nondimensional history window; inf keeps the full
    history.  delay_steps: integer lag d = delay_steps * dt applied to
    the kernel argument (values at negative shifted argument are zero).
    """

    truncation_gamma: float = np.inf
    delay_steps: int = 0

    def __post_init__(self):
        if not (self.truncation_gamma > 0.0):
            raise ValueError("KernelConfig: truncation_gamma must be positive")
        if self.delay_steps < 0:
            raise ValueError("KernelConfig: delay_steps must be >= 0")


def kernel_identical(gamma):
    """Matched-materials kernel shape C(gamma) = J1(gamma), gamma >= 0."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("kernel_identical: gamma must be nonnegative")
    out = bessel_j1(g)
    return out if isinstance(gamma, np.ndarray) else float(out)


def eta(pair: MaterialPair) -> float:
    """Bimaterial radiation factor (1 + (cs'/cs)(mu/mu'))/2; 1 if matched."""
    ratio = (pair.bottom.cs / pair.top.cs) * (pair.top.mu / pair.bottom.mu)
    return 0.5 * (1.0 + ratio)


def kernel_bimaterial(pair: MaterialPair, k_abs, dt_phys):
    """Bimaterial time-domain kernel K(k, t) in 1/s.

    Reduces exactly to |k| c_s J1(|k| c_s t) when both half-planes match.
    Accepts scalars or arrays (broadcast) for k_abs and dt_phys.
    """
    k = np.asarray(k_abs, dtype=float)
    t = np.asarray(dt_phys, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("kernel_bimaterial: k_abs must be nonnegative")
    if np.any(t < 0.0):
        raise ValueError("kernel_bimaterial: dt_phys must be nonnegative")
    cs, csp = pair.top.cs, pair.bottom.cs
    ratio = (csp / cs) * (pair.top.mu / pair.bottom.mu)
    out = 0.5 * k * (
        cs * bessel_j1(k * cs * t) + ratio * csp * bessel_j1(k * csp * t)
    )
    if isinstance(k_abs, np.ndarray) or isinstance(dt_phys, np.ndarray):
        return out
    return float(out)


def kernel_hat_identical(k_abs: float, p: float, cs: float = 1.0) -> float:
    """Laplace-domain kernel 1 - 1/sqrt(1 + |k|^2 cs^2 / p^2), p > 0.

    Verification-only: tests compare it against the numerically
    transformed time-domain kernel.
    """
    if not (p > 0.0):
        raise ValueError("kernel_hat_identical: p must be positive")
    if k_abs < 0.0:
        raise ValueError("kernel_hat_identical: k_abs must be nonnegative")
    a = k_abs * cs / p
    return 1.0 - 1.0 / np.sqrt(1.0 + a * a)


@dataclass(frozen=True)
class KernelTable:
    """Per-|k| kernel samples on the step lattice, delay already applied.

    rows[j, i] holds K(k_j, (i - delay_steps) dt) for i >= delay_steps and
    zero otherwise, so a convolution at lag i steps reads rows[j, i]
    directly.  Rows are indexed by the nonnegative-frequency mode list
    (|k| is what the kernel depends on).  window_steps[j] is the retained
    history span implied by truncation_gamma (-1 = unlimited).
    """

    k_abs: np.ndarray
    dt: float
    delay_steps: int
    rows: np.ndarray = field(repr=False)
    window_steps: np.ndarray = field(repr=False)

    @classmethod
    def build(
        cls,
        pair: MaterialPair,
        k_abs: np.ndarray,
        dt: float,
        n_steps: int,
        config: KernelConfig = KernelConfig(),
        force_bimaterial: bool = False,
    ) -> "KernelTable":
        """Tabulate kernel rows for n_steps steps of size dt.

        The matched-materials closed form is used when the pair matches
        (force_bimaterial keeps the general formula for degeneracy
        checks).
        """
        k_abs = np.asarray(k_abs, dtype=float)
        d = config.delay_steps
        lags = np.arange(n_steps + 2)
        shifted = np.maximum(lags - d, 0) * dt
        if pair.is_identical and not force_bimaterial:
            cs = pair.top.cs
            rows = k_abs[:, None] * cs * bessel_j1(k_abs[:, None] * cs * shifted[None, :])
        else:
            rows = kernel_bimaterial(pair, k_abs[:, None], shifted[None, :])
        if d > 0:
            rows[:, :d] = 0.0
        if np.isfinite(config.truncation_gamma):
            denom = k_abs * pair.cs_min * dt
            with np.errstate(divide="ignore"):
                w = np.ceil(config.truncation_gamma / np.where(denom > 0, denom, np.inf))
            window = np.where(denom > 0, w, -1.0).astype(int)
        else:
            window = np.full(k_abs.shape, -1, dtype=int)
        return cls(
            k_abs=k_abs, dt=dt, delay_steps=d, rows=rows, window_steps=window
        )
