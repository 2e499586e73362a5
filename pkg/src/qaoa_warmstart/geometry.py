"""Unit-sphere vertex embeddings, coordinate conversions, and the randomized
global re-alignments applied before mapping an embedding onto qubits.

Conventions: rank-2 points are polar angles theta on the unit circle,
(cos t, sin t); rank-3 points are spherical angles (theta, phi) with theta the
polar angle from +z and phi the azimuth, (sin t cos p, sin t sin p, cos t).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SphereEmbedding:
    """Per-vertex unit vectors in rank 2 or 3, stored as angles.

    ``angles`` has shape (n,) for rank 2 (polar angle per vertex) and (n, 2)
    for rank 3 (polar, azimuthal).  Radii are fixed at 1 by construction.
    """

    rank: int
    angles: np.ndarray

    def __post_init__(self):
        if self.rank not in (2, 3):
            raise ValueError(f"rank must be 2 or 3, got {self.rank}")
        self.angles = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if self.rank == 2:
            if self.angles.ndim != 1:
                raise ValueError("rank-2 embedding needs a 1-D angle array")
        else:
            if self.angles.ndim != 2 or self.angles.shape[1] != 2:
                raise ValueError("rank-3 embedding needs an (n, 2) angle array")

    @property
    def n(self) -> int:
        return self.angles.shape[0]


def embedding_cartesian(x: SphereEmbedding) -> np.ndarray:
    """(n, rank) array of unit vectors for the whole embedding."""
    if x.rank == 2:
        t = x.angles
        return np.column_stack([np.cos(t), np.sin(t)])
    t, p = x.angles[:, 0], x.angles[:, 1]
    st = np.sin(t)
    return np.column_stack([st * np.cos(p), st * np.sin(p), np.cos(t)])


def to_cartesian(x: SphereEmbedding, i: int) -> np.ndarray:
    """Unit vector of vertex i."""
    if not 0 <= i < x.n:
        raise IndexError(f"vertex {i} out of range for {x.n}-point embedding")
    if x.rank == 2:
        t = x.angles[i]
        return np.array([np.cos(t), np.sin(t)])
    t, p = x.angles[i]
    return np.array([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)])


def from_cartesian(v) -> tuple[float, float]:
    """Spherical angles (theta, phi) of a 3-D unit vector.

    phi = atan2(y, x) normalized into [0, 2*pi); at the poles (sin theta = 0)
    phi is fixed to 0.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"expected a unit vector, got norm {norm!r}")
    theta = float(np.arccos(np.clip(v[2], -1.0, 1.0)))
    if abs(v[0]) == 0.0 and abs(v[1]) == 0.0:
        return theta, 0.0
    phi = float(np.arctan2(v[1], v[0])) % (2 * np.pi)
    return theta, phi


def _rot_z(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def pole_alignment_matrix(theta: float, phi: float, omega: float) -> np.ndarray:
    """Rotation sending the direction (theta, phi) to +z, then spinning by omega.

    Composite of a clockwise z-rotation by phi, a clockwise y-rotation by
    theta, and a final z-rotation by omega (which fixes the pole).
    """
    return _rot_z(omega) @ _rot_y(-theta) @ _rot_z(-phi)


def _apply_matrix_rank3(x: SphereEmbedding, rot: np.ndarray) -> SphereEmbedding:
    pts = embedding_cartesian(x) @ rot.T
    theta = np.arccos(np.clip(pts[:, 2], -1.0, 1.0))
    phi = np.arctan2(pts[:, 1], pts[:, 0]) % (2 * np.pi)
    phi[np.abs(np.sin(theta)) < 1e-15] = 0.0
    return SphereEmbedding(3, np.column_stack([theta, phi]))


def rotate_vertex_at_top(x: SphereEmbedding, rng: np.random.Generator) -> SphereEmbedding:
    """Re-align so a uniformly chosen vertex sits at the measurement pole.

    Rank 3 additionally applies a uniform azimuthal spin omega; rank 2 shifts
    every polar angle by the chosen vertex's angle.
    """
    if x.n == 0:
        raise ValueError("cannot rotate an empty embedding")
    i = int(rng.integers(x.n))
    if x.rank == 2:
        return SphereEmbedding(2, (x.angles - x.angles[i]) % (2 * np.pi))
    theta_i, phi_i = x.angles[i]
    omega = float(rng.uniform(0.0, 2 * np.pi))
    rotated = _apply_matrix_rank3(x, pole_alignment_matrix(theta_i, phi_i, omega))
    # the alignment sends vertex i to the pole by construction; writing the
    # angles directly avoids arccos roundoff near z = 1
    rotated.angles[i] = (0.0, 0.0)
    return rotated


def rotate_uniform(x: SphereEmbedding, rng: np.random.Generator) -> SphereEmbedding:
    """Apply a uniformly random global rotation of the embedding sphere.

    Rank 3: draw a point uniformly on the sphere (phi = 2*pi*a,
    theta = arccos(2*b - 1)), send it to the pole, then spin by a uniform
    omega.  Rank 2: shift all angles by a uniform offset.
    """
    if x.rank == 2:
        shift = float(rng.uniform(0.0, 2 * np.pi))
        return SphereEmbedding(2, (x.angles + shift) % (2 * np.pi))
    a, b = rng.uniform(0.0, 1.0, size=2)
    phi_hat = 2 * np.pi * a
    theta_hat = float(np.arccos(2 * b - 1))
    omega = float(rng.uniform(0.0, 2 * np.pi))
    return _apply_matrix_rank3(x, pole_alignment_matrix(theta_hat, phi_hat, omega))
