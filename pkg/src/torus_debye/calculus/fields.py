"""
Per-mode scalar and tangent fields on a surface of revolution.

A mode-n field is f(t) e^{inθ}; only the t-profile is stored, sampled at
the grid nodes. Tangent fields are stored by their τ̂ and θ̂ components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray


@dataclass(frozen=True, eq=False)
class ModalScalar:
    """Coefficient profile of a scalar field at azimuthal mode n."""

    mode: int
    values: NDArray[np.complex128]

    @classmethod
    def of(cls, mode: int, values: ArrayLike) -> ModalScalar:
        """Build from any array-like, promoting to complex."""
        return cls(mode, np.asarray(values, dtype=complex).copy())

    @classmethod
    def zeros(cls, mode: int, n_nodes: int) -> ModalScalar:
        """Zero field."""
        return cls(mode, np.zeros(n_nodes, dtype=complex))

    def __len__(self) -> int:
        return int(self.values.size)

    def __add__(self, other: ModalScalar) -> ModalScalar:
        _check_modes(self.mode, other.mode)
        return ModalScalar(self.mode, self.values + other.values)

    def __sub__(self, other: ModalScalar) -> ModalScalar:
        _check_modes(self.mode, other.mode)
        return ModalScalar(self.mode, self.values - other.values)

    def scale(self, factor: complex) -> ModalScalar:
        """Multiply by a constant."""
        return ModalScalar(self.mode, factor * self.values)


@dataclass(frozen=True, eq=False)
class ModalTangentField:
    """Tangent field τ-component and θ-component profiles at mode n."""

    mode: int
    tau: NDArray[np.complex128]
    theta: NDArray[np.complex128]

    @classmethod
    def of(cls, mode: int, tau: ArrayLike, theta: ArrayLike) -> ModalTangentField:
        """Build from array-likes, promoting to complex."""
        return cls(
            mode, np.asarray(tau, dtype=complex).copy(), np.asarray(theta, dtype=complex).copy()
        )

    @classmethod
    def zeros(cls, mode: int, n_nodes: int) -> ModalTangentField:
        """Zero field."""
        return cls(mode, np.zeros(n_nodes, dtype=complex), np.zeros(n_nodes, dtype=complex))

    @classmethod
    def from_stacked(cls, mode: int, stacked: ArrayLike) -> ModalTangentField:
        """Inverse of `stacked`."""
        arr = np.asarray(stacked, dtype=complex)
        n = arr.size // 2
        return cls(mode, arr[:n].copy(), arr[n:].copy())

    def stacked(self) -> NDArray[np.complex128]:
        """Concatenated [τ; θ] components."""
        return np.concatenate([self.tau, self.theta])

    def __len__(self) -> int:
        return int(self.tau.size)

    def __add__(self, other: ModalTangentField) -> ModalTangentField:
        _check_modes(self.mode, other.mode)
        return ModalTangentField(self.mode, self.tau + other.tau, self.theta + other.theta)

    def __sub__(self, other: ModalTangentField) -> ModalTangentField:
        _check_modes(self.mode, other.mode)
        return ModalTangentField(self.mode, self.tau - other.tau, self.theta - other.theta)

    def scale(self, factor: complex) -> ModalTangentField:
        """Multiply by a constant."""
        return ModalTangentField(self.mode, factor * self.tau, factor * self.theta)

    def pointwise_norm(self) -> NDArray[np.float64]:
        """|v| at each node (the frame is orthonormal)."""
        return np.sqrt(np.abs(self.tau) ** 2 + np.abs(self.theta) ** 2)

    def ambient(
        self, tangent: NDArray[np.float64], azimuthal: NDArray[np.float64]
    ) -> NDArray[np.complex128]:
        """Cartesian components at θ = 0 given the grid frames."""
        return self.tau[:, None] * tangent + self.theta[:, None] * azimuthal


def _check_modes(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"Cannot combine fields of modes {a} and {b}")
