"""
Helmholtz Green's function g_k(R) = e^{ikR} / (4πR) and relatives.

Array functions act on distances R; the point functions wrap them for
single pairs of points. The difference kernel (g_k − g_0)/k switches to
its Taylor series when |k|R < 1, which keeps full relative accuracy as
k → 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.typing import ArrayLike, NDArray

FOUR_PI = 4 * np.pi
SERIES_SWITCH = 1.0
SERIES_TERMS = 30

_SERIES_COEFFS = np.array([1.0 / factorial(m + 1) for m in range(SERIES_TERMS)])
# d/dR of the series: m (ik)^m R^{m−1} / (m+1)!, stored per power of z = ikR.
_SERIES_DERIV_COEFFS = np.array(
    [(m + 1) / factorial(m + 2) for m in range(SERIES_TERMS - 1)]
)


class KernelDomainError(Exception):
    """Kernel evaluated at coincident points."""


@dataclass(frozen=True)
class Wavenumber:
    """
    Complex wavenumber with branch 0 ≤ arg k < π.

    Construction flips the sign of k if needed, which selects the branch
    with Im k ≥ 0 (outgoing or decaying waves).
    """

    value: complex

    def __post_init__(self) -> None:
        k = complex(self.value)
        if k.imag < 0 or (k.imag == 0 and k.real < 0):
            k = -k
        object.__setattr__(self, "value", k)

    @classmethod
    def from_material(cls, eps: complex, mu: complex, omega: float) -> Wavenumber:
        """k = ω √(εμ) on the admissible branch."""
        return cls(omega * np.sqrt(complex(eps) * complex(mu)))

    @property
    def is_zero(self) -> bool:
        """Whether k = 0 exactly."""
        return self.value == 0

    def __complex__(self) -> complex:
        return self.value

    def __abs__(self) -> float:
        return abs(self.value)


def _as_complex(k: Wavenumber | complex) -> complex:
    return k.value if isinstance(k, Wavenumber) else complex(k)


def green_kernel(r: NDArray[np.float64], k: Wavenumber | complex) -> NDArray[np.complex128]:
    """g_k(R)."""
    kk = _as_complex(k)
    return np.exp(1j * kk * r) / (FOUR_PI * r)


def green_radial_derivative(
    r: NDArray[np.float64], k: Wavenumber | complex
) -> NDArray[np.complex128]:
    """dg_k/dR = (ikR − 1) e^{ikR} / (4πR²)."""
    kk = _as_complex(k)
    return (1j * kk * r - 1) * np.exp(1j * kk * r) / (FOUR_PI * r * r)


def _horner(coeffs: NDArray[np.float64], z: NDArray[np.complex128]) -> NDArray[np.complex128]:
    out = np.full(z.shape, coeffs[-1], dtype=complex)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def difference_kernel(r: NDArray[np.float64], k: Wavenumber | complex) -> NDArray[np.complex128]:
    """
    (g_k − g_0)/k, with the k → 0 limit i/(4π) at k = 0.

    Series i Σ_m (ikR)^m / (4π (m+1)!) for |k|R < 1, direct difference otherwise.
    """
    kk = _as_complex(k)
    rr = np.asarray(r, dtype=float)
    if kk == 0:
        return np.full(rr.shape, 1j / FOUR_PI, dtype=complex)
    z = 1j * kk * rr
    near = np.abs(kk) * rr < SERIES_SWITCH
    out = np.empty(rr.shape, dtype=complex)
    out[near] = 1j * _horner(_SERIES_COEFFS, z[near]) / FOUR_PI
    far = ~near
    out[far] = (np.exp(z[far]) - 1) / (FOUR_PI * rr[far] * kk)
    return out


def difference_radial_derivative(
    r: NDArray[np.float64], k: Wavenumber | complex
) -> NDArray[np.complex128]:
    """d/dR of (g_k − g_0)/k; equals −k/(8π) + O(k²R) for small k."""
    kk = _as_complex(k)
    rr = np.asarray(r, dtype=float)
    if kk == 0:
        return np.zeros(rr.shape, dtype=complex)
    z = 1j * kk * rr
    near = np.abs(kk) * rr < SERIES_SWITCH
    out = np.empty(rr.shape, dtype=complex)
    # i Σ_{m≥1} m (ik)^m R^{m−1} / (4π(m+1)!) = i (ik) Σ_{m≥0} (m+1) z^m / (4π(m+2)!)
    out[near] = 1j * (1j * kk) * _horner(_SERIES_DERIV_COEFFS, z[near]) / FOUR_PI
    far = ~near
    rf = rr[far]
    gk_prime = (z[far] - 1) * np.exp(z[far]) / (FOUR_PI * rf * rf)
    g0_prime = -1.0 / (FOUR_PI * rf * rf)
    out[far] = (gk_prime - g0_prime) / kk
    return out


def _separation(x: ArrayLike, y: ArrayLike) -> tuple[NDArray[np.float64], float]:
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = float(np.linalg.norm(d))
    if r == 0:
        raise KernelDomainError("Green's function evaluated at coincident points")
    return d, r


def green(x: ArrayLike, y: ArrayLike, k: Wavenumber | complex) -> complex:
    """g_k(|x − y|)."""
    _, r = _separation(x, y)
    return complex(green_kernel(np.array([r]), k)[0])


def green_grad(x: ArrayLike, y: ArrayLike, k: Wavenumber | complex) -> NDArray[np.complex128]:
    """∇_x g_k = (ik − 1/R) g_k (x − y)/R."""
    d, r = _separation(x, y)
    return complex(green_radial_derivative(np.array([r]), k)[0]) * d / r


def green_normal_deriv(
    x: ArrayLike, y: ArrayLike, k: Wavenumber | complex, normal: ArrayLike
) -> complex:
    """∂g_k/∂n_x."""
    return complex(np.dot(green_grad(x, y, k), np.asarray(normal, dtype=float)))


def green_diff_over_k(x: ArrayLike, y: ArrayLike, k: Wavenumber | complex) -> complex:
    """(g_k − g_0)/k at a pair of points."""
    _, r = _separation(x, y)
    return complex(difference_kernel(np.array([r]), k)[0])
