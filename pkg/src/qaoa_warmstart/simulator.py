"""Exact statevector simulation of alternating cost-phase and mixer layers.

Basis convention: index b encodes the bitstring b_0 b_1 ... b_{n-1} with
vertex 0 as the most significant bit, i.e. bit of vertex i is
(b >> (n-1-i)) & 1.  The cost operator is diagonal in this basis with the
cut value of each bitstring as its eigenvalue, so a layer is a pure phase;
the mixer factorizes into per-qubit 2x2 rotations
[[cos b, -i sin b], [-i sin b, cos b]].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import CapacityError, CutAssignment, WeightedGraph

DEFAULT_CAPACITY = 20
NORM_TOLERANCE = 1e-9


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {self.amps.shape}")

    def norm_sq(self) -> float:
        return float(np.sum(self.amps.real**2 + self.amps.imag**2))


@dataclass
class QaoaParams:
    """Variational angles for p alternating layers."""

    p: int
    gamma: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("depth must be non-negative")
        self.gamma = np.atleast_1d(np.asarray(self.gamma, dtype=float))
        self.beta = np.atleast_1d(np.asarray(self.beta, dtype=float))
        if self.gamma.shape != (self.p,) or self.beta.shape != (self.p,):
            raise ValueError("gamma and beta must each have length p")


@dataclass
class CostTable:
    """Cut value of every bitstring: the diagonal of the cost operator."""

    n: int
    cut: np.ndarray


def bits_to_index(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def index_to_bits(index: int, n: int) -> tuple[int, ...]:
    return tuple((index >> (n - 1 - i)) & 1 for i in range(n))


def build_cost_table(g: WeightedGraph, capacity: int = DEFAULT_CAPACITY) -> CostTable:
    if g.n > capacity:
        raise CapacityError(f"cost table limited to n <= {capacity}, got {g.n}")
    idx = np.arange(1 << g.n, dtype=np.int64)
    cut = np.zeros(1 << g.n)
    for u, v, w in g.edges:
        differ = ((idx >> (g.n - 1 - u)) ^ (idx >> (g.n - 1 - v))) & 1
        cut += w * differ
    return CostTable(g.n, cut)


def _check_norm(amps: np.ndarray, where: str) -> None:
    drift = abs(float(np.sum(amps.real**2 + amps.imag**2)) - 1.0)
    if drift > NORM_TOLERANCE:
        raise ArithmeticError(f"state norm drifted by {drift:.3e} after {where}")


def apply_cost_layer(s: StateVector, t: CostTable, gamma: float) -> StateVector:
    """Diagonal phase amp[b] *= exp(-i * gamma * cut[b])."""
    if t.n != s.n:
        raise ValueError(f"cost table is for n={t.n}, state has n={s.n}")
    return StateVector(s.n, np.exp(-1j * gamma * t.cut) * s.amps)


def apply_mixer_layer(s: StateVector, beta: float) -> StateVector:
    """exp(-i * beta * X) on every qubit, as n strided single-qubit sweeps."""
    amps = s.amps.copy()
    c = np.cos(beta)
    ms = -1j * np.sin(beta)
    for q in range(s.n):
        view = amps.reshape(1 << q, 2, 1 << (s.n - 1 - q))
        top = view[:, 0, :].copy()
        view[:, 0, :] = c * top + ms * view[:, 1, :]
        view[:, 1, :] = ms * top + c * view[:, 1, :]
    return StateVector(s.n, amps)


def evolve(s0: StateVector, t: CostTable, params: QaoaParams) -> StateVector:
    """Alternate cost and mixer layers; p = 0 returns the input unchanged."""
    s = s0
    for k in range(params.p):
        s = apply_cost_layer(s, t, float(params.gamma[k]))
        s = apply_mixer_layer(s, float(params.beta[k]))
        _check_norm(s.amps, f"layer {k + 1}")
    return s


def expected_cut(s: StateVector, t: CostTable) -> float:
    """<state| cost |state> = sum_b |amp[b]|^2 * cut[b]."""
    if t.n != s.n:
        raise ValueError(f"cost table is for n={t.n}, state has n={s.n}")
    probs = s.amps.real**2 + s.amps.imag**2
    return float(probs @ t.cut)


def cut_distribution(s: StateVector) -> np.ndarray:
    """Measurement probability of every bitstring."""
    return s.amps.real**2 + s.amps.imag**2


def assignment_from_index(index: int, n: int) -> CutAssignment:
    return CutAssignment(index_to_bits(index, n))
