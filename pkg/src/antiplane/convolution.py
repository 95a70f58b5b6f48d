"""Per-mode stress-history storage and the discrete memory convolution.

The convolution at step n over a history T_0..T_m is the trapezoid sum

    F_n = dt * sum_{m=ws}^{n} w_m K((n - m - d) dt) T_m,

with w = 1/2 at the two end indices (m = ws and m = n) and 1 inside,
kernel values at negative shifted argument equal to zero, and d the
delay in steps.  The m = n term never contributes through the stress
kernel because K(0) = 0, which is what makes the marching explicit.
ws is the truncation window start (0 when truncation is disabled).

ModeHistory is the single-mode container used by tests and oracles;
ModeHistoryBank holds all modes contiguously for the simulator, where
the inner loop is a plain dot product per mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .kernels import KernelTable


@dataclass
class ConvolutionCounters:
    """Cost bookkeeping: kernel_evals follows the nominal cost model
    sum over modes of the retained history span, per evaluation."""

    kernel_evals: int = 0
    convolve_calls: int = 0


class ModeHistory:
    """Append-only complex history for one mode.

    window_steps < 0 keeps the full history; otherwise entries older
    than window_steps lags at evaluation time are excluded from sums.
    """

    def __init__(self, window_steps: int = -1):
        self._values: list[complex] = []
        self.window_steps = int(window_steps)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self._values, dtype=complex)

    def window_start(self, eval_step: int) -> int:
        if self.window_steps < 0:
            return 0
        return max(0, eval_step - self.window_steps)

    def push(self, value: complex, step: int | None = None) -> None:
        """Append this step's stress amplitude.

        step, when given, must equal the number of entries already
        stored; pushing twice within one step raises.
        """
        if step is not None and step != len(self._values):
            raise RuntimeError(
                f"push: expected step {len(self._values)}, got {step} "
                "(pushed twice within one step?)"
            )
        self._values.append(complex(value))


def convolve(
    history: ModeHistory,
    kernel_row: np.ndarray,
    delay_steps: int,
    dt: float,
    eval_step: int | None = None,
) -> complex:
    """Trapezoid memory convolution of one mode's history.

    kernel_row[i] holds the undelayed kernel at lag i steps,
    K(k, i*dt); the delay shifts the lookup (lag -> lag - delay_steps,
    zero below).  eval_step defaults to len(history), the step right
    after the newest entry, matching the stepping engines.
    """
    L = len(history)
    if L == 0:
        return 0.0 + 0.0j
    n = L if eval_step is None else int(eval_step)
    if n < L - 1:
        raise ValueError("convolve: evaluation step precedes stored history")
    if len(kernel_row) <= max(n - delay_steps, 0):
        raise ConfigError("convolve: kernel row shorter than history span")
    ws = history.window_start(n)
    vals = history.values[ws:L]
    kernel_row = np.asarray(kernel_row)
    idx = (n - np.arange(ws, L)) - delay_steps
    kv = np.where(idx >= 0, kernel_row[np.maximum(idx, 0)], 0.0)
    w = np.ones(L - ws)
    w[0] = 0.5  # m = ws end node
    if n == L - 1 and L - ws > 1:
        w[-1] = 0.5  # m = n end node (stored only when evaluating in place)
    return dt * complex(np.sum(w * kv * vals))


class ModeHistoryBank:
    """Contiguous histories for a set of modes (one row per mode)."""

    def __init__(self, n_modes: int, capacity: int):
        self.values = np.zeros((n_modes, capacity), dtype=complex)
        self.length = 0

    @property
    def n_modes(self) -> int:
        return self.values.shape[0]

    def push(self, amplitudes: np.ndarray, step: int) -> None:
        """Store one step's amplitudes for every mode; step must be the
        current history length (guards double pushes)."""
        if step != self.length:
            raise RuntimeError(
                f"push: expected step {self.length}, got {step} "
                "(pushed twice within one step?)"
            )
        if self.length >= self.values.shape[1]:
            raise ConfigError("history bank capacity exceeded")
        self.values[:, self.length] = amplitudes
        self.length += 1


def convolve_all(
    bank: ModeHistoryBank,
    table: KernelTable,
    dt: float,
    eval_step: int | None = None,
    counters: ConvolutionCounters | None = None,
) -> np.ndarray:
    """Evaluate the memory convolution for every mode in the bank.

    The table rows already carry the delay shift (rows[j, i] is the
    kernel at lag i steps).  Returns one complex amplitude per mode;
    Hermitian pairing of the inputs is preserved because the kernel is
    real.
    """
    L = bank.length
    n = L if eval_step is None else int(eval_step)
    if L == 0:
        return np.zeros(bank.n_modes, dtype=complex)
    if n < L - 1:
        raise ValueError("convolve_all: evaluation step precedes stored history")
    rows = table.rows
    if rows.shape[0] != bank.n_modes:
        raise ConfigError("convolve_all: table mode count mismatch")
    if rows.shape[1] < n + 1:
        raise ConfigError("convolve_all: kernel table shorter than history span")

    hist = bank.values[:, :L]
    window = table.window_steps
    unlimited = bool(np.all(window < 0))
    spans = np.where(window < 0, L, np.minimum(L, np.maximum(window - (n - L), 0)))
    if counters is not None:
        counters.kernel_evals += int(spans.sum())
        counters.convolve_calls += 1

    if unlimited:
        # lag n-m for m = 0..L-1 -> rows sliced [n-L+1, n] and reversed
        kflip = rows[:, n - L + 1 : n + 1][:, ::-1]
        F = np.einsum("jm,jm->j", kflip, hist.real) + 1j * np.einsum(
            "jm,jm->j", kflip, hist.imag
        )
        F -= 0.5 * rows[:, n] * hist[:, 0]  # w = 1/2 at m = 0
        return dt * F

    F = np.empty(bank.n_modes, dtype=complex)
    for j in range(bank.n_modes):
        ws = 0 if window[j] < 0 else max(0, n - int(window[j]))
        seg = hist[j, ws:L]
        kseg = rows[j, n - L + 1 : n - ws + 1][::-1]
        acc = np.dot(kseg, seg.real) + 1j * np.dot(kseg, seg.imag)
        acc -= 0.5 * rows[j, n - ws] * hist[j, ws]
        F[j] = acc
    return dt * F
