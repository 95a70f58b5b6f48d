"""Interface discretization and spatial <-> spectral transforms.

The interface is a periodic segment of length L split into N equal
elements.  Element centers sit at x_m = (m - N/2) dx, so one center is
exactly at x = 0 and the grid maps onto itself under the index
reflection m -> (N - m) mod N (used by the symmetry checks).

Spectral amplitudes use the discrete wavenumber set k_j = 2 pi j / L for
j in {-N/2, ..., N/2 - 1} in standard FFT ordering, with the forward
transform normalized by 1/N so amplitudes carry the physical units of
the field they expand (Pa for stress, m for slip).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SymmetryError

_HERMITIAN_TOL = 1e-10


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D periodic interface discretization.

    Attributes
    ----------
    L : float
        Interface length (m).
    N : int
        Element count, power of two.
    dx : float
        Element size, L/N (m).
    x_centers : ndarray
        N element-center coordinates (m), one exactly at x = 0.
    k_values : ndarray
        N wavenumbers (rad/m) in FFT order; max |k| = pi/dx.
    """

    L: float
    N: int
    dx: float = field(init=False)
    x_centers: np.ndarray = field(init=False, repr=False)
    k_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.L > 0.0):
            raise ValueError("Grid: L must be positive")
        if not _is_power_of_two(self.N):
            raise ValueError("Grid: N must be a power of two")
        dx = self.L / self.N
        object.__setattr__(self, "dx", dx)
        object.__setattr__(
            self, "x_centers", (np.arange(self.N) - self.N // 2) * dx
        )
        object.__setattr__(
            self, "k_values", 2.0 * np.pi * np.fft.fftfreq(self.N, d=dx)
        )

    @property
    def k_abs_half(self) -> np.ndarray:
        """|k| for the nonnegative-frequency indices 0..N/2."""
        return np.abs(self.k_values[: self.N // 2 + 1])

    def element_index(self, x: float) -> int:
        """Index of the element whose cell [x_m - dx/2, x_m + dx/2) holds x."""
        m = int(np.floor(x / self.dx + 0.5)) + self.N // 2
        if not (0 <= m < self.N):
            raise ValueError(f"position {x} outside the interface")
        return m

    def reflect(self, f: np.ndarray) -> np.ndarray:
        """Field sampled at -x: index map m -> (N - m) mod N."""
        return np.concatenate((f[:1], f[1:][::-1]))


def _enforce_hermitian(amps: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian-symmetric subspace (real generating field)."""
    n = amps.shape[0]
    out = amps.copy()
    out[0] = out[0].real
    out[n // 2] = out[n // 2].real  # Nyquist pairs with itself
    upper = out[1 : n // 2]
    lower = out[: n // 2 : -1]
    avg = 0.5 * (upper + np.conj(lower))
    out[1 : n // 2] = avg
    out[: n // 2 : -1] = np.conj(avg)
    return out


def forward(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Spatial field -> spectral amplitudes (Fourier-series coefficients).

    amps[j] = (1/N) sum_m f_m exp(-i k_j x_m) with Hermitian symmetry
    enforced, so inverse(forward(f)) == f to machine precision.
    """
    f = np.asarray(f)
    if f.shape != (grid.N,):
        raise ValueError(
            f"forward: field length {f.shape} does not match grid N={grid.N}"
        )
    if np.iscomplexobj(f):
        raise ValueError("forward: field must be real")
    # x_m = (m - N/2) dx shifts the standard DFT by N/2 samples: the phase
    # factor is exp(+i k_j (N/2) dx) = (-1)^j.
    amps = np.fft.fft(f) / grid.N
    signs = np.where(np.arange(grid.N) % 2 == 0, 1.0, -1.0)
    return _enforce_hermitian(amps * signs)


def inverse(grid: Grid, amps: np.ndarray) -> np.ndarray:
    """Spectral amplitudes -> real spatial field.

    Requires Hermitian symmetry within tolerance; the imaginary residue
    of the back transform is checked and discarded.
    """
    amps = np.asarray(amps, dtype=complex)
    if amps.shape != (grid.N,):
        raise ValueError(
            f"inverse: spectrum length {amps.shape} does not match grid N={grid.N}"
        )
    scale = np.linalg.norm(amps)
    if scale > 0.0:
        mirrored = np.conj(_mirror(amps))
        defect = np.linalg.norm(amps - mirrored)
        if defect > _HERMITIAN_TOL * scale:
            raise SymmetryError(
                f"inverse: spectrum is not Hermitian (defect {defect:.3e} "
                f"vs tolerance {_HERMITIAN_TOL:.1e} of norm)"
            )
    signs = np.where(np.arange(grid.N) % 2 == 0, 1.0, -1.0)
    field_c = np.fft.ifft(amps * signs) * grid.N
    fnorm = np.linalg.norm(field_c)
    if fnorm > 0.0 and np.linalg.norm(field_c.imag) > _HERMITIAN_TOL * fnorm:
        raise SymmetryError("inverse: imaginary residue above tolerance")
    return field_c.real


def _mirror(amps: np.ndarray) -> np.ndarray:
    """amps evaluated at -k: index map j -> (N - j) mod N."""
    return np.concatenate((amps[:1], amps[1:][::-1]))


def half_to_full(grid: Grid, half: np.ndarray) -> np.ndarray:
    """Expand amplitudes on indices 0..N/2 to a full Hermitian spectrum."""
    n = grid.N
    if half.shape != (n // 2 + 1,):
        raise ValueError("half_to_full: expected N/2+1 amplitudes")
    full = np.empty(n, dtype=complex)
    full[: n // 2 + 1] = half
    full[n // 2 + 1 :] = np.conj(half[1 : n // 2][::-1])
    full[0] = full[0].real
    full[n // 2] = full[n // 2].real
    return full
