"""Depth-1 parameter landscapes, percentile aggregation of training runs, and
Monte Carlo verification of the sampling-only (p = 0) approximation bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import ProductState, amplitudes, map_rank2, map_rank3
from .geometry import SphereEmbedding, rotate_uniform
from .simulator import (
    apply_cost_layer,
    apply_mixer_layer,
    build_cost_table,
    cut_distribution,
    expected_cut,
)
from .graphs import WeightedGraph
from .training import best_of_runs

DEFAULT_RESOLUTION = (129, 65)
DEFAULT_PERCENTILES = (0.05, 0.5, 0.95)
P0_BOUND_ALPHAS = (np.pi / 6, np.pi / 3, np.pi / 2, 2 * np.pi / 3, 5 * np.pi / 6, np.pi)


@dataclass
class Landscape:
    """Expected cut over a (gamma, beta) grid at depth 1.

    ``values[i, j]`` is the expectation at (gamma_grid[j], beta_grid[i]),
    i.e. rows scan the mixer angle and columns the cost angle.
    """

    gamma_grid: np.ndarray
    beta_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        expected = (len(self.beta_grid), len(self.gamma_grid))
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != grid shape {expected}")


@dataclass
class AggregateCurve:
    """One percentile of approximation ratios across a collection, per epoch."""

    percentile: float
    values: np.ndarray


@dataclass
class P0BoundRow:
    """Monte Carlo cut-probability to relaxation-contribution ratio for one
    edge angle, with its standard error."""

    alpha: float
    ratio: float
    std_error: float


def scan_landscape(
    g: WeightedGraph,
    s0: ProductState,
    resolution: tuple[int, int] = DEFAULT_RESOLUTION,
) -> Landscape:
    """Evaluate the depth-1 expectation on a dense grid via exact simulation.

    gamma spans [-pi, pi] and beta spans [-pi/4, pi/4]; symmetries make the
    reduced beta window lossless for unit-weight graphs.
    """
    n_gamma, n_beta = resolution
    if n_gamma < 2 or n_beta < 2:
        raise ValueError("grid needs at least 2 points per axis")
    table = build_cost_table(g)
    base = amplitudes(s0)
    gamma_grid = np.linspace(-np.pi, np.pi, n_gamma)
    beta_grid = np.linspace(-np.pi / 4, np.pi / 4, n_beta)
    values = np.empty((n_beta, n_gamma))
    for j, gamma in enumerate(gamma_grid):
        phased = apply_cost_layer(base, table, float(gamma))
        for i, beta in enumerate(beta_grid):
            values[i, j] = expected_cut(apply_mixer_layer(phased, float(beta)), table)
    return Landscape(gamma_grid, beta_grid, values)


def percentile_rho(values, r: float) -> float:
    """Percentile with linear interpolation between 1-indexed order statistics.

    For sorted s_1 <= ... <= s_N and n := r*N: returns s_n when n is an
    integer, otherwise s_i + (n - i)(s_{i+1} - s_i) with i = floor(n).
    Values of n below 1 clamp to the minimum.
    """
    s = sorted(float(v) for v in values)
    if not s:
        raise ValueError("percentile of an empty collection")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"percentile must be in [0, 1], got {r}")
    n = r * len(s)
    if n < 1.0:
        return s[0]
    nearest = round(n)
    if abs(n - nearest) < 1e-9:
        return s[int(nearest) - 1]
    i = math.floor(n)
    return s[i - 1] + (n - i) * (s[i] - s[i - 1])


def aggregate_curves(
    traces_per_graph,
    max_cut_values,
    percentiles=DEFAULT_PERCENTILES,
) -> list[AggregateCurve]:
    """Percentile curves of best-of-runs approximation ratios over epochs.

    ``traces_per_graph[k]`` holds the repeated runs for graph k and
    ``max_cut_values[k]`` its exact optimum.  Traces shorter than the longest
    one hold their final value.
    """
    if not traces_per_graph:
        raise ValueError("no training runs supplied")
    if len(traces_per_graph) != len(max_cut_values):
        raise ValueError("one max-cut value is required per graph")
    for runs in traces_per_graph:
        if not runs:
            raise ValueError("every graph needs at least one run")
    horizon = max(tr.num_epochs for runs in traces_per_graph for tr in runs)
    ratios = np.empty((horizon, len(traces_per_graph)))
    for k, (runs, mc) in enumerate(zip(traces_per_graph, max_cut_values)):
        if mc <= 0:
            raise ValueError("max-cut values must be positive")
        for t in range(horizon):
            ratios[t, k] = best_of_runs(runs, t) / mc
    return [
        AggregateCurve(r, np.array([percentile_rho(ratios[t], r) for t in range(horizon)]))
        for r in percentiles
    ]


def _edge_pair_embedding(rank: int, alpha: float) -> SphereEmbedding:
    """Two unit vectors separated by angle alpha."""
    if rank == 2:
        return SphereEmbedding(2, np.array([0.0, alpha]))
    return SphereEmbedding(3, np.array([[np.pi / 2, 0.0], [np.pi / 2, alpha]]))


def verify_p0_bound(
    rank: int,
    samples: int,
    rng: np.random.Generator,
    alphas=P0_BOUND_ALPHAS,
) -> list[P0BoundRow]:
    """Monte Carlo check of the sampling-only guarantee for a single edge.

    For each separation angle alpha, a two-vertex embedding at that angle is
    uniformly rotated and mapped to qubits, and the probability of measuring
    the endpoints on opposite sides is averaged over rotations, then divided
    by the edge's relaxation contribution (1 - cos alpha)/2.  The minimum of
    that ratio over alpha is 3/4 in rank 2 and 2/3 in rank 3, attained at
    alpha = pi.
    """
    if rank not in (2, 3):
        raise ValueError(f"rank must be 2 or 3, got {rank}")
    if samples < 10**4:
        raise ValueError("need at least 10^4 samples for a meaningful estimate")
    mapper = map_rank2 if rank == 2 else map_rank3
    rows = []
    for alpha in alphas:
        pair = _edge_pair_embedding(rank, float(alpha))
        p_cut = np.empty(samples)
        for k in range(samples):
            rotated = rotate_uniform(pair, rng)
            dist = cut_distribution(amplitudes(mapper(rotated)))
            p_cut[k] = dist[1] + dist[2]  # |01> and |10>
        contribution = (1.0 - np.cos(alpha)) / 2.0
        mean = float(np.mean(p_cut))
        stderr = float(np.std(p_cut, ddof=1) / np.sqrt(samples))
        rows.append(P0BoundRow(float(alpha), mean / contribution, stderr / contribution))
    return rows
