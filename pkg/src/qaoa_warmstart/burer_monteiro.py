"""Low-rank Burer-Monteiro relaxation of Max-Cut on the unit sphere.

Vertices are embedded as unit vectors in R^k (k = 2, 3) maximizing
(1/4) * sum_{(i,j) in E} w_ij * ||x_i - x_j||^2 by stochastic coordinate
ascent: one vertex's angles are perturbed at a time and the move is kept
unless the objective strictly decreases.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .geometry import SphereEmbedding, embedding_cartesian
from .graphs import CutAssignment, WeightedGraph, max_cut_brute_force
from .rng import make_rng, spawn_seeds


@dataclass(frozen=True)
class BmSolverConfig:
    """Coordinate-ascent hyperparameters.

    ``delta`` is the half-width of the uniform angle perturbation;
    the ascent stops once the best objective has improved by no more than
    ``stall_tolerance_factor * sum|w_e|`` over ``stall_window`` consecutive
    objective evaluations.
    """

    delta: float = 1.0 / 20.0
    stall_tolerance_factor: float = 1e-5
    stall_window: int = 100
    restarts: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("perturbation half-width must be positive")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


def objective_bm(g: WeightedGraph, x: SphereEmbedding) -> float:
    """(1/4) * sum over edges of w * ||a_u - a_v||^2."""
    if x.n != g.n:
        raise ValueError(f"embedding has {x.n} points for a {g.n}-vertex graph")
    if not g.edges:
        return 0.0
    pts = embedding_cartesian(x)
    u = np.fromiter((e[0] for e in g.edges), dtype=int)
    v = np.fromiter((e[1] for e in g.edges), dtype=int)
    w = np.fromiter((e[2] for e in g.edges), dtype=float)
    d = pts[u] - pts[v]
    return float(0.25 * np.sum(w * np.sum(d * d, axis=1)))


def normalize_angles(x: SphereEmbedding) -> SphereEmbedding:
    """Reduce angles to the standard ranges without moving any point.

    Rank 3: after mod-2pi reduction, a polar angle above pi is reflected
    (theta -> 2pi - theta, phi -> phi + pi), which leaves the Cartesian image
    unchanged.  Rank 2 is a plain mod-2pi reduction.
    """
    two_pi = 2 * np.pi
    if x.rank == 2:
        return SphereEmbedding(2, x.angles % two_pi)
    ang = x.angles % two_pi
    flip = ang[:, 0] > np.pi
    ang[flip, 0] = two_pi - ang[flip, 0]
    ang[flip, 1] = (ang[flip, 1] + np.pi) % two_pi
    return SphereEmbedding(3, ang)


def _random_positions(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points on the circle (rank 2) or sphere (rank 3)."""
    if rank == 2:
        return rng.uniform(0.0, 2 * np.pi, size=n)
    phi = 2 * np.pi * rng.uniform(0.0, 1.0, size=n)
    theta = np.arccos(2 * rng.uniform(0.0, 1.0, size=n) - 1)
    return np.column_stack([theta, phi])


def _point(rank: int, angles_i) -> np.ndarray:
    if rank == 2:
        return np.array([np.cos(angles_i), np.sin(angles_i)])
    t, p = angles_i
    st = np.sin(t)
    return np.array([st * np.cos(p), st * np.sin(p), np.cos(t)])


def coordinate_ascent(
    g: WeightedGraph,
    rank: int,
    rng: np.random.Generator,
    delta: float = 1.0 / 20.0,
    stall_tolerance: float = 0.0,
    stall_window: int = 100,
) -> tuple[SphereEmbedding, float, np.ndarray]:
    """One ascent run from a fresh uniform-random embedding.

    Returns (normalized embedding, objective, per-evaluation objective
    history of the kept state).  ``stall_tolerance`` is the absolute
    improvement threshold.
    """
    n = g.n
    positions = _random_positions(n, rank, rng)
    emb = SphereEmbedding(rank, positions)
    pts = embedding_cartesian(emb)

    nbrs: list[list[int]] = [[] for _ in range(n)]
    nbr_w: list[list[float]] = [[] for _ in range(n)]
    for u, v, w in g.edges:
        nbrs[u].append(v)
        nbr_w[u].append(w)
        nbrs[v].append(u)
        nbr_w[v].append(w)
    nbr_idx = [np.array(a, dtype=int) for a in nbrs]
    nbr_wt = [np.array(a) for a in nbr_w]

    def contrib(i: int, pt: np.ndarray) -> float:
        # incident-edge share: (1/2) * sum_j w_ij * (1 - <pt, a_j>)
        if len(nbr_idx[i]) == 0:
            return 0.0
        return float(0.5 * np.sum(nbr_wt[i] * (1.0 - pts[nbr_idx[i]] @ pt)))

    obj = objective_bm(g, emb)
    history = [obj]
    best_ring: deque[float] = deque(maxlen=stall_window + 1)
    best = obj
    best_ring.append(best)
    stalled = False

    while not stalled:
        for i in range(n):
            if rank == 2:
                trial_angle = positions[i] + rng.uniform(-delta, delta)
            else:
                trial_angle = positions[i] + rng.uniform(-delta, delta, size=2)
            new_pt = _point(rank, trial_angle)
            candidate = obj - contrib(i, pts[i]) + contrib(i, new_pt)
            if candidate >= obj:  # undo only on strict decrease
                positions[i] = trial_angle
                pts[i] = new_pt
                obj = candidate
            history.append(obj)
            best = max(best, obj)
            best_ring.append(best)
            if len(best_ring) == stall_window + 1 and best_ring[-1] - best_ring[0] <= stall_tolerance:
                stalled = True
                break

    emb = normalize_angles(SphereEmbedding(rank, positions))
    return emb, objective_bm(g, emb), np.asarray(history)


def solve_bm(g: WeightedGraph, rank: int, cfg: BmSolverConfig) -> SphereEmbedding:
    """Best embedding over independent coordinate-ascent restarts."""
    if rank not in (2, 3):
        raise ValueError(f"rank must be 2 or 3, got {rank}")
    tol = cfg.stall_tolerance_factor * sum(abs(w) for _, _, w in g.edges)
    best_emb = None
    best_obj = -np.inf
    for seed in spawn_seeds(cfg.seed, cfg.restarts):
        emb, obj, _ = coordinate_ascent(
            g, rank, make_rng(seed), delta=cfg.delta, stall_tolerance=tol, stall_window=cfg.stall_window
        )
        if obj > best_obj:
            best_obj = obj
            best_emb = emb
    return best_emb


def hyperplane_round(x: SphereEmbedding, rng: np.random.Generator) -> CutAssignment:
    """Cut from signing inner products with a uniform random direction."""
    r = rng.normal(size=x.rank)
    r /= np.linalg.norm(r)
    pts = embedding_cartesian(x)
    return CutAssignment(tuple(int(d < 0) for d in pts @ r))


def approximation_kappa(g: WeightedGraph, x: SphereEmbedding) -> float:
    """Embedding objective divided by the exact Max-Cut value.

    May exceed 1 since the relaxation upper-bounds the cut.
    """
    mc, _ = max_cut_brute_force(g)
    if mc == 0:
        raise ValueError("max-cut value is zero; approximation ratio undefined")
    return objective_bm(g, x) / mc
