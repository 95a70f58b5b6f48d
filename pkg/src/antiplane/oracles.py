"""Analytic and semi-analytic references used by tests and the verify CLI.

The modal problem drives a single mode with a unit Heaviside slip rate
and tracks the nondimensional stress response r(gamma).  Its integral
representation

    r(gamma) = 1 + int_0^gamma (J1(u)/u) (gamma - u) du

is evaluated by adaptive quadrature (authoritative) and by the closed
form

    r = J0 + g^2 J0 - g J1 + (pi g^2 / 2)(J1 H0 - J0 H1),

which follows from int_0^x J0 = x J0 + (pi x/2)(J1 H0 - J0 H1); the two
agree to ~1e-13.  Long-time behavior: r(gamma) -> gamma.

modal_volterra marches the same response with the production
convolution path (same weights, same kernel tables), so the modal tests
certify the engine's discretization rather than a parallel one.

The slip-history formulation convolves slip instead of stress with
kernel shape M(gamma) = J1(gamma)/gamma (finite 1/2 at zero lag) and
dimensional prefactor -mu |k|^2 c_s / 2, fixed so its Laplace transform
reproduces the same modal relation; it serves as a cross-validation
route for single-mode trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .convolution import ModeHistory, ModeHistoryBank, convolve, convolve_all
from .errors import InstabilityError
from .kernels import KernelConfig, KernelTable, Material, MaterialPair
from .specfun import bessel_j0, bessel_j1, bessel_j1_over_x, struve_h0, struve_h1

_BLOWUP = 1e12


@dataclass(frozen=True)
class ModalRun:
    """Marching solution of the modal response on a uniform gamma lattice."""

    dgamma: float
    gamma_max: float
    delay_gamma: float
    gammas: np.ndarray
    r: np.ndarray


def modal_analytic(gamma):
    """Modal step response r(gamma) by adaptive quadrature."""
    scalar = np.isscalar(gamma)
    gs = np.atleast_1d(np.asarray(gamma, dtype=float))
    if np.any(gs < 0.0):
        raise ValueError("modal_analytic: gamma must be nonnegative")
    out = np.empty_like(gs)
    for i, g in enumerate(gs):
        if g == 0.0:
            out[i] = 1.0
            continue
        val, _ = quad(
            lambda u, g=g: bessel_j1_over_x(u) * (g - u),
            0.0,
            g,
            limit=max(200, int(g)),
        )
        out[i] = 1.0 + val
    return float(out[0]) if scalar else out


def modal_analytic_closed_form(gamma):
    """Closed form of the modal step response via Struve functions."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("modal_analytic_closed_form: gamma must be nonnegative")
    j0, j1 = bessel_j0(g), bessel_j1(g)
    h0, h1 = struve_h0(g), struve_h1(g)
    out = j0 + g * g * j0 - g * j1 + 0.5 * np.pi * g * g * (j1 * h0 - j0 * h1)
    return out if isinstance(gamma, np.ndarray) else float(out)


_UNIT_PAIR = MaterialPair.identical(Material(mu=1.0, rho=1.0, cs=1.0))


def modal_volterra(
    dgamma: float, gamma_max: float, delay_gamma: float = 0.0
) -> ModalRun:
    """March the modal response with the production convolution path.

    delay_gamma must be an integer multiple of dgamma (it is applied as
    a whole-step kernel lag).  Raises InstabilityError when |r| exceeds
    1e12, which happens for very large dgamma.
    """
    if not (dgamma > 0.0):
        raise ValueError("modal_volterra: dgamma must be positive")
    d = int(round(delay_gamma / dgamma))
    if abs(d * dgamma - delay_gamma) > 1e-9 * max(dgamma, delay_gamma):
        raise ValueError("modal_volterra: delay_gamma must be a multiple of dgamma")
    n_steps = int(round(gamma_max / dgamma))
    table = KernelTable.build(
        _UNIT_PAIR,
        np.array([1.0]),
        dgamma,
        n_steps,
        KernelConfig(delay_steps=d),
    )
    bank = ModeHistoryBank(1, n_steps + 1)
    r = np.empty(n_steps + 1)
    r[0] = 1.0
    bank.push(np.array([r[0]], dtype=complex), step=0)
    for n in range(1, n_steps + 1):
        F = convolve_all(bank, table, dgamma)
        r[n] = 1.0 + F[0].real
        if abs(r[n]) > _BLOWUP:
            raise InstabilityError(
                f"modal marching blew up at gamma = {n * dgamma:.3f} "
                f"(dgamma = {dgamma})",
                gamma=n * dgamma,
            )
        if n < n_steps:
            bank.push(np.array([r[n]], dtype=complex), step=n)
    gammas = np.arange(n_steps + 1) * dgamma
    return ModalRun(
        dgamma=dgamma,
        gamma_max=gamma_max,
        delay_gamma=d * dgamma,
        gammas=gammas,
        r=r,
    )


def impulse_analytic(X: float, t, mu: float, cs: float):
    """Slip response at distance X > 0 to an impulsive line load.

    Zero before arrival, (1/(pi mu)) / sqrt(t^2 - (X/cs)^2) after, and
    +inf exactly at t = X/cs.
    """
    if not (X > 0.0):
        raise ValueError("impulse_analytic: X must be positive")
    scalar = np.isscalar(t)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    ta = X / cs
    out = np.zeros_like(ts)
    late = ts > ta
    out[late] = (1.0 / (np.pi * mu)) / np.sqrt(ts[late] ** 2 - ta**2)
    out[ts == ta] = np.inf
    return float(out[0]) if scalar else out


def slip_history_kernel_row(
    k_abs: float, mu: float, cs: float, dt: float, n: int
) -> np.ndarray:
    """Slip-history kernel samples at lags 0..n steps (value -mu k^2 cs/4
    at zero lag, i.e. prefactor times M(0) = 1/2)."""
    lags = np.arange(n + 1) * dt
    return -(mu * k_abs * k_abs * cs / 2.0) * bessel_j1_over_x(k_abs * cs * lags)


def single_mode_slip_formulation(
    D_history, k_abs: float, mu: float, cs: float, dt: float
) -> complex:
    """Evaluate the slip-history convolution at the newest history entry.

    D_history holds the mode's slip amplitudes on the step lattice; the
    current entry contributes through the finite zero-lag kernel value
    (trapezoid end weight 1/2).
    """
    if isinstance(D_history, ModeHistory):
        hist = D_history
    else:
        hist = ModeHistory()
        for i, v in enumerate(np.asarray(D_history)):
            hist.push(v, step=i)
    if len(hist) == 0:
        return 0.0 + 0.0j
    row = slip_history_kernel_row(k_abs, mu, cs, dt, len(hist))
    return convolve(hist, row, 0, dt, eval_step=len(hist) - 1)
