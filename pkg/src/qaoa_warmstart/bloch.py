"""Mapping sphere embeddings to tensor-product qubit states.

A qubit with Bloch angles (theta, phi) is
cos(theta/2)|0> + exp(i*phi) sin(theta/2)|1>; its Bloch vector is
(sin t cos p, sin t sin p, cos t), matching the rank-3 embedding convention,
so rank-3 points map to qubits verbatim.  Rank-2 points are embedded in the
yz-plane of the Bloch sphere.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import SphereEmbedding
from .simulator import DEFAULT_CAPACITY, CapacityError, StateVector

_ANGLE_TOL = 1e-12


@dataclass
class ProductState:
    """Per-qubit Bloch angles (theta in [0, pi], phi in [0, 2*pi))."""

    qubits: np.ndarray

    def __post_init__(self):
        self.qubits = np.asarray(self.qubits, dtype=float).reshape(-1, 2)
        if np.any(self.qubits[:, 0] < -_ANGLE_TOL) or np.any(self.qubits[:, 0] > np.pi + _ANGLE_TOL):
            raise ValueError("polar angles must lie in [0, pi]")

    @property
    def n(self) -> int:
        return self.qubits.shape[0]


def map_rank3(x: SphereEmbedding) -> ProductState:
    """Each vertex's spherical angles become its qubit's Bloch angles."""
    if x.rank != 3:
        raise ValueError(f"expected a rank-3 embedding, got rank {x.rank}")
    return ProductState(x.angles.copy())


def map_rank2(x: SphereEmbedding) -> ProductState:
    """Embed circle points into the yz-plane of the Bloch sphere.

    For polar angle t in [0, pi) the qubit is cos(t/2)|0> + e^{-i pi/2}
    sin(t/2)|1>; for t in [pi, 2*pi) it is cos(pi - t/2)|0> + e^{i pi/2}
    sin(pi - t/2)|1>.  Both store as Bloch angles with phi in {3*pi/2, pi/2},
    so every mapped Bloch vector has zero x-component.
    """
    if x.rank != 2:
        raise ValueError(f"expected a rank-2 embedding, got rank {x.rank}")
    t = x.angles % (2 * np.pi)
    qubits = np.empty((x.n, 2))
    lower = t < np.pi
    qubits[lower, 0] = t[lower]
    qubits[lower, 1] = 1.5 * np.pi
    qubits[~lower, 0] = 2 * np.pi - t[~lower]
    qubits[~lower, 1] = 0.5 * np.pi
    return ProductState(qubits)


def qubit_amplitudes(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def amplitudes(s: ProductState, capacity: int = DEFAULT_CAPACITY) -> StateVector:
    """Full 2^n statevector of the tensor product, qubit 0 most significant."""
    if s.n > capacity:
        raise CapacityError(f"statevector limited to n <= {capacity}, got {s.n}")
    amps = np.array([1.0 + 0j])
    for theta, phi in s.qubits:
        amps = np.kron(amps, qubit_amplitudes(theta, phi))
    return StateVector(s.n, amps)


def bloch_vector(theta: float, phi: float) -> np.ndarray:
    """Pauli expectation values (<X>, <Y>, <Z>) of a single qubit."""
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-1j * theta / 2), 0.0], [0.0, np.exp(1j * theta / 2)]])


def gate_decomposition_check(theta: float, phi: float, tol: float = 1e-9) -> bool:
    """Verify Rz(phi + pi/2) Rx(theta) |0> equals the Bloch-angle state up to
    global phase (fidelity |<a|b>| = 1 within tol)."""
    circuit = _rz(phi + np.pi / 2) @ _rx(theta) @ np.array([1.0, 0.0])
    direct = qubit_amplitudes(theta, phi)
    fidelity = abs(np.vdot(circuit, direct))
    return bool(abs(fidelity - 1.0) <= tol)


def plus_state(n: int) -> ProductState:
    """|+>^n, the uniform-superposition initial state."""
    return ProductState(np.tile([np.pi / 2, 0.0], (n, 1)))


def basis_product_state(bits) -> ProductState:
    """Computational basis state |b_0 b_1 ... b_{n-1}> as Bloch angles."""
    return ProductState(np.array([[np.pi * int(b), 0.0] for b in bits]))
