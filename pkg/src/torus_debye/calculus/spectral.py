"""
Fourier differentiation and resampling on equispaced periodic grids.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray


@lru_cache(maxsize=16)
def differentiation_matrix(n_nodes: int) -> NDArray[np.float64]:
    """
    Matrix of d/dt applied to the band-limited interpolant (even N).

    D_ij = ½ (−1)^{i−j} cot((i−j)h/2) off the diagonal and 0 on it; the
    Nyquist mode is differentiated to zero.
    """
    h = 2 * np.pi / n_nodes
    offset = np.subtract.outer(np.arange(n_nodes), np.arange(n_nodes))
    off_diagonal = offset != 0
    safe = np.where(off_diagonal, offset, 1)
    sign = np.where(safe % 2 == 0, 1.0, -1.0)
    matrix = 0.5 * sign / np.tan(safe * h / 2)
    matrix[~off_diagonal] = 0.0
    matrix.setflags(write=False)
    return matrix


def spectral_derivative(values: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """First t-derivative by FFT (Nyquist mode zeroed)."""
    n = values.shape[-1]
    freq = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        freq[n // 2] = 0.0
    return np.fft.ifft(1j * freq * np.fft.fft(values, axis=-1), axis=-1)


def spectral_upsample(values: NDArray[np.complex128], factor: int) -> NDArray[np.complex128]:
    """
    Evaluate the band-limited interpolant on a grid `factor` times finer.

    The Nyquist coefficient is split between ±N/2 so that real data stays
    real and the interpolant matches the one used by the Alpert stencil.
    """
    if factor == 1:
        return np.asarray(values, dtype=complex)
    n = values.shape[-1]
    fine = n * factor
    coeffs = np.fft.fft(values, axis=-1)
    padded = np.zeros(values.shape[:-1] + (fine,), dtype=complex)
    half = n // 2
    padded[..., :half] = coeffs[..., :half]
    padded[..., fine - half + 1 :] = coeffs[..., half + 1 :]
    padded[..., half] = 0.5 * coeffs[..., half]
    padded[..., fine - half] = 0.5 * coeffs[..., half]
    return np.fft.ifft(padded, axis=-1) * factor
