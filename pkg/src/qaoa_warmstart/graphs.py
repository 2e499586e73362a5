"""Weighted graph model, instance generators, and the exact Max-Cut oracle."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .rng import make_rng

BRUTE_FORCE_MAX_N = 30
_BRUTE_FORCE_CHUNK = 1 << 20


class CapacityError(ValueError):
    """Input exceeds a hard enumeration or simulation bound."""


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on vertices 0..n-1 with real edge weights.

    Edges are stored as (u, v, w) with u < v; no self-loops or duplicates.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        object.__setattr__(self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in self.edges))
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) violates 0 <= u < v < n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            if not math.isfinite(w):
                raise ValueError(f"edge ({u},{v}) has non-finite weight {w}")
            seen.add((u, v))

    @staticmethod
    def from_edge_list(n: int, edges) -> "WeightedGraph":
        """Build from (u, v) or (u, v, w) items; weight defaults to 1.0."""
        norm = []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            u, v = (u, v) if u < v else (v, u)
            norm.append((int(u), int(v), float(w)))
        return WeightedGraph(n, tuple(sorted(norm)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CutAssignment:
    """Binary side assignment; bits[i] is the side of vertex i."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("cut assignment bits must be 0 or 1")

    def complement(self) -> "CutAssignment":
        return CutAssignment(tuple(1 - b for b in self.bits))


@dataclass(frozen=True)
class GraphCollection:
    id: str
    graphs: tuple[WeightedGraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        if not self.graphs:
            raise ValueError("graph collection must be non-empty")

    def __len__(self) -> int:
        return len(self.graphs)


def cut_value(g: WeightedGraph, c: CutAssignment) -> float:
    """Total weight of edges whose endpoints lie on different sides."""
    if len(c.bits) != g.n:
        raise ValueError(f"assignment has {len(c.bits)} bits for a {g.n}-vertex graph")
    return sum(w for u, v, w in g.edges if c.bits[u] != c.bits[v])


def total_weight(g: WeightedGraph) -> float:
    return sum(w for _, _, w in g.edges)


def max_cut_brute_force(g: WeightedGraph) -> tuple[float, CutAssignment]:
    """Exact maximum cut by enumerating all 2^(n-1) assignments.

    Vertex 0 is fixed on side 0; cuts are complement-invariant so this halves
    the search without loss.
    """
    if g.n > BRUTE_FORCE_MAX_N:
        raise CapacityError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {g.n}")
    m = g.n - 1
    total = 1 << m
    best_val = -math.inf
    best_idx = 0
    for start in range(0, total, _BRUTE_FORCE_CHUNK):
        idx = np.arange(start, min(start + _BRUTE_FORCE_CHUNK, total), dtype=np.int64)
        cuts = np.zeros(len(idx))
        for u, v, w in g.edges:
            # vertex 0 is always on side 0; vertex i>0 occupies bit (n-1-i)
            bu = (idx >> (g.n - 1 - u)) & 1 if u > 0 else 0
            bv = (idx >> (g.n - 1 - v)) & 1
            cuts += w * ((bu ^ bv) != 0)
        k = int(np.argmax(cuts))
        if cuts[k] > best_val:
            best_val = float(cuts[k])
            best_idx = int(idx[k])
    bits = (0,) + tuple((best_idx >> (g.n - 1 - i)) & 1 for i in range(1, g.n))
    return best_val, CutAssignment(bits)


def is_connected(g: WeightedGraph) -> bool:
    if g.n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def erdos_renyi_connected(
    n: int,
    delta: float,
    count: int,
    seed,
    max_attempts: int = 10**6,
) -> GraphCollection:
    """Connected G(n, delta) samples with unit weights.

    Each of the C(n, 2) edges is included independently with probability
    ``delta``; disconnected draws are discarded and resampled, up to
    ``max_attempts`` per graph.
    """
    if not 0 < delta <= 1:
        raise ValueError(f"edge probability must be in (0, 1], got {delta}")
    rng = make_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    graphs = []
    for _ in range(count):
        for _ in range(max_attempts):
            mask = rng.random(len(pairs)) < delta
            edges = tuple((u, v, 1.0) for (u, v), keep in zip(pairs, mask) if keep)
            g = WeightedGraph(n, edges)
            if is_connected(g):
                graphs.append(g)
                break
        else:
            raise RuntimeError(
                f"no connected G({n}, {delta}) sample within {max_attempts} attempts"
            )
    return GraphCollection(f"er-n{n}-d{delta}-x{count}", tuple(graphs))


def _canonical_form(n: int, edges) -> tuple:
    """Minimum edge-list encoding over all vertex permutations (n <= 5 only)."""
    pairs = [(u, v) for u, v, _ in edges]
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in pairs))
        if best is None or relabeled < best:
            best = relabeled
    return best


def enumerate_connected_5node() -> GraphCollection:
    """All connected unweighted graphs on 5 vertices, one per isomorphism class.

    Brute force over the 2^10 edge subsets with exhaustive 5!-permutation
    canonicalization; tractable only because n is fixed at 5.
    """
    n = 5
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[tuple, WeightedGraph] = {}
    for mask in range(1 << len(pairs)):
        edges = tuple((u, v, 1.0) for k, (u, v) in enumerate(pairs) if mask >> k & 1)
        g = WeightedGraph(n, edges)
        if not is_connected(g):
            continue
        key = _canonical_form(n, edges)
        if key not in seen:
            seen[key] = g
    graphs = tuple(g for _, g in sorted(seen.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return GraphCollection("connected-5node", graphs)


def connected_components(
    g: WeightedGraph,
) -> list[tuple[WeightedGraph, tuple[int, ...]]]:
    """Split into connected components with vertices relabeled 0..|V_i|-1.

    Returns (subgraph, vertex_map) pairs where vertex_map[local] is the
    original vertex id.  Components are ordered by smallest original id and
    local ids preserve the original order, so concatenating the maps yields a
    globally increasing vertex sequence.
    """
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    assigned = [-1] * g.n
    comps: list[list[int]] = []
    for root in range(g.n):
        if assigned[root] >= 0:
            continue
        comp_id = len(comps)
        members = [root]
        assigned[root] = comp_id
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if assigned[v] < 0:
                    assigned[v] = comp_id
                    members.append(v)
                    stack.append(v)
        comps.append(sorted(members))

    out = []
    for comp_id, members in enumerate(comps):
        local = {orig: i for i, orig in enumerate(members)}
        edges = tuple((local[u], local[v], w) for u, v, w in g.edges if assigned[u] == comp_id)
        out.append((WeightedGraph(len(members), edges), tuple(members)))
    return out


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    edges = [(i, i + 1, weight) for i in range(n - 1)] + [(0, n - 1, weight)]
    return WeightedGraph(n, tuple(sorted(edges)))


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, tuple((i, i + 1, weight) for i in range(n - 1)))


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, tuple((u, v, weight) for u, v in itertools.combinations(range(n), 2)))


def single_edge(weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(2, ((0, 1, weight),))
