"""Closed-form and Monte Carlo checks of the guarantees the pipeline is built
on, runnable as a battery (CLI ``verify-theory``) or from the test suite.

Each check returns a CheckResult; nothing is asserted here so callers decide
whether a failure is fatal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import scan_landscape, verify_p0_bound
from .bloch import ProductState, amplitudes, basis_product_state, gate_decomposition_check, map_rank3, plus_state
from .burer_monteiro import BmSolverConfig, objective_bm, solve_bm
from .geometry import SphereEmbedding, embedding_cartesian, pole_alignment_matrix, rotate_uniform, rotate_vertex_at_top
from .graphs import WeightedGraph, connected_components, cycle_graph, erdos_renyi_connected, max_cut_brute_force, single_edge, total_weight
from .rng import make_rng
from .simulator import QaoaParams, build_cost_table, evolve, expected_cut
from .training import gradient_fd

P0_BOUNDS = {2: 0.75, 3: 2.0 / 3.0}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_params(p: int, rng: np.random.Generator) -> QaoaParams:
    return QaoaParams(p, rng.uniform(-np.pi, np.pi, p), rng.uniform(-np.pi / 4, np.pi / 4, p))


def _random_weighted_graph(n: int, delta: float, rng: np.random.Generator) -> WeightedGraph:
    base = erdos_renyi_connected(n, delta, 1, int(rng.integers(2**63))).graphs[0]
    edges = tuple((u, v, float(rng.uniform(0.2, 2.0))) for u, v, _ in base.edges)
    return WeightedGraph(n, edges)


def check_stuck_pair_ceiling(tol: float = 1e-12, trials: int = 50) -> CheckResult:
    """An edge initialized at the +x/-x axis pair stays at half its max cut
    for every depth and parameter choice."""
    g = single_edge()
    table = build_cost_table(g)
    s0 = amplitudes(ProductState([[np.pi / 2, 0.0], [np.pi / 2, np.pi]]))  # |+> (x) |->
    mc, _ = max_cut_brute_force(g)
    rng = make_rng(20211)
    worst = 0.0
    for p in (1, 2, 3):
        for _ in range(trials):
            f = expected_cut(evolve(s0, table, _random_params(p, rng)), table)
            worst = max(worst, abs(f - 0.5 * mc))
    return CheckResult(
        "stuck-pair ceiling", worst <= tol, f"max |F - 0.5*maxcut| = {worst:.3e} (tol {tol:.0e})"
    )


def check_two_edge_plateau(tol: float = 1e-9, grid: int = 21) -> CheckResult:
    """Two disjoint edges with the fixed |0,1,i,-i> start sit at exactly 75%
    of the optimum across the whole depth-1 parameter window."""
    g = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0)))
    s0 = ProductState(
        [[0.0, 0.0], [np.pi, 0.0], [np.pi / 2, np.pi / 2], [np.pi / 2, 3 * np.pi / 2]]
    )
    mc, _ = max_cut_brute_force(g)
    ls = scan_landscape(g, s0, resolution=(grid, grid))
    worst = float(np.max(np.abs(ls.values / mc - 0.75)))
    return CheckResult(
        "two-edge 0.75 plateau", worst <= tol, f"max |F/maxcut - 0.75| = {worst:.3e} over {grid}x{grid} grid"
    )


def check_aligned_basis_landscape(tol: float = 1e-9, graphs: int = 10, grid: int = 21) -> CheckResult:
    """With a maximum-cut basis state as the start, the depth-1 landscape is
    (1/4)*((2M - W)cos(4*beta) + 2M + W), independent of gamma."""
    rng = make_rng(20212)
    worst = 0.0
    for _ in range(graphs):
        g = _random_weighted_graph(5, 0.6, rng)
        mc, assignment = max_cut_brute_force(g)
        w = total_weight(g)
        ls = scan_landscape(g, basis_product_state(assignment.bits), resolution=(grid, grid))
        closed = 0.25 * ((2 * mc - w) * np.cos(4 * ls.beta_grid) + 2 * mc + w)
        worst = max(worst, float(np.max(np.abs(ls.values - closed[:, None]))))
    return CheckResult(
        "aligned-basis landscape closed form", worst <= tol, f"max |F - closed form| = {worst:.3e}"
    )


def check_uniform_p0_half_weight(graphs: int = 20, rel_tol: float = 1e-12) -> CheckResult:
    """Sampling the uniform superposition cuts half the total weight."""
    rng = make_rng(20213)
    worst = 0.0
    for _ in range(graphs):
        g = _random_weighted_graph(int(rng.integers(4, 8)), 0.5, rng)
        table = build_cost_table(g)
        f = expected_cut(amplitudes(plus_state(g.n)), table)
        w = total_weight(g)
        worst = max(worst, abs(f - w / 2) / max(1.0, w))
    return CheckResult(
        "uniform-superposition half weight", worst <= rel_tol, f"max rel error = {worst:.3e}"
    )


def _random_disconnected_graph(rng: np.random.Generator) -> WeightedGraph:
    """2-3 blocks with interleaved vertex ids and random intra-block edges."""
    sizes = [int(rng.integers(2, 4)) for _ in range(int(rng.integers(2, 4)))]
    n = sum(sizes)
    perm = rng.permutation(n)
    edges = []
    offset = 0
    for size in sizes:
        block = sorted(int(perm[offset + i]) for i in range(size))
        for a in range(size):
            for b in range(a + 1, size):
                if rng.random() < 0.7:
                    edges.append((block[a], block[b], float(rng.uniform(0.2, 2.0))))
        offset += size
    return WeightedGraph(n, tuple(edges))


def check_component_additivity(tol: float = 1e-9, graphs: int = 10, depths=(1, 2)) -> CheckResult:
    """The expectation on a disconnected graph is the sum over components when
    the start state is a product state split along them."""
    rng = make_rng(20214)
    worst = 0.0
    for _ in range(graphs):
        g = _random_disconnected_graph(rng)
        qubits = np.column_stack(
            [rng.uniform(0, np.pi, g.n), rng.uniform(0, 2 * np.pi, g.n)]
        )
        s0 = ProductState(qubits)
        for p in depths:
            params = _random_params(p, rng)
            whole = expected_cut(evolve(amplitudes(s0), build_cost_table(g), params), build_cost_table(g))
            parts = 0.0
            for sub, vmap in connected_components(g):
                sub_state = ProductState(qubits[list(vmap)])
                sub_table = build_cost_table(sub)
                parts += expected_cut(evolve(amplitudes(sub_state), sub_table, params), sub_table)
            worst = max(worst, abs(whole - parts))
    return CheckResult(
        "component additivity", worst <= tol, f"max |F(G) - sum F(G_i)| = {worst:.3e}"
    )


def check_p0_bound(
    rank: int,
    samples: int = 10**5,
    sweep_samples: int = 2 * 10**4,
    pi_tol: float = 0.01,
    seed: int = 20215,
) -> CheckResult:
    """Monte Carlo edge ratios: 2/3 (rank 3) or 3/4 (rank 2) at alpha = pi
    with the full sample budget, and at least bound - 3*sigma across the
    whole angle sweep."""
    bound = P0_BOUNDS[rank]
    at_pi = verify_p0_bound(rank, samples, make_rng(seed + rank), alphas=(np.pi,))[0]
    sweep = verify_p0_bound(rank, sweep_samples, make_rng(seed + 10 * rank))
    rows = sweep + [at_pi]
    pi_ok = abs(at_pi.ratio - bound) <= pi_tol
    all_ok = all(r.ratio >= bound - 3 * r.std_error for r in rows)
    detail = (
        f"ratio(pi) = {at_pi.ratio:.4f} (target {bound:.4f} +- {pi_tol}), "
        f"min margin over bound-3sigma = "
        f"{min(r.ratio - (bound - 3 * r.std_error) for r in rows):.4f}"
    )
    return CheckResult(f"p0 rotation bound rank {rank}", pi_ok and all_ok, detail)


def _antipodal_axis_spread(x: SphereEmbedding) -> float:
    """Largest angle of any point from the +-axis line of the first point."""
    pts = embedding_cartesian(x)
    axis = pts[0]
    dots = np.clip(np.abs(pts @ axis), -1.0, 1.0)
    return float(np.max(np.arccos(dots)))


def check_even_cycle_optimality(
    bundles: int = 10,
    required: int = 9,
    obj_tol: float = 1e-2,
    antipodal_tol: float = 0.15,
    seed: int = 20216,
) -> CheckResult:
    """Rank-3 ascent on even cycles reaches the full cut, lands on an
    antipodal configuration, and survives the vertex-at-top mapping at p=0."""
    rng = make_rng(seed)
    details = []
    ok = True
    for n in (4, 6, 8):
        g = cycle_graph(n)
        table = build_cost_table(g)
        hits = 0
        for b in range(bundles):
            cfg = BmSolverConfig(seed=int(rng.integers(2**63)))
            emb = solve_bm(g, 3, cfg)
            obj = objective_bm(g, emb)
            if abs(obj - n) > obj_tol:
                continue
            if _antipodal_axis_spread(emb) > antipodal_tol:
                continue
            rotated = rotate_vertex_at_top(emb, make_rng(int(rng.integers(2**63))))
            f0 = expected_cut(amplitudes(map_rank3(rotated)), table)
            if abs(f0 - n) > obj_tol:
                continue
            hits += 1
        details.append(f"C{n}: {hits}/{bundles}")
        ok = ok and hits >= required
    return CheckResult("even-cycle optimality", ok, ", ".join(details))


def check_norm_preservation(tol: float = 1e-9) -> CheckResult:
    """Twelve qubits, three layers, random start: unit norm is preserved."""
    rng = make_rng(20217)
    g = erdos_renyi_connected(12, 0.4, 1, 99).graphs[0]
    qubits = np.column_stack([rng.uniform(0, np.pi, 12), rng.uniform(0, 2 * np.pi, 12)])
    s = evolve(amplitudes(ProductState(qubits)), build_cost_table(g), _random_params(3, rng))
    drift = abs(s.norm_sq() - 1.0)
    return CheckResult("norm preservation p=3 n=12", drift <= tol, f"|norm^2 - 1| = {drift:.3e}")


def check_gradient_agreement(tol_factor: float = 10.0) -> CheckResult:
    """Forward differences match a central-difference oracle."""
    rng = make_rng(20218)
    g = _random_weighted_graph(5, 0.6, rng)
    qubits = np.column_stack([rng.uniform(0, np.pi, 5), rng.uniform(0, 2 * np.pi, 5)])
    s0 = amplitudes(ProductState(qubits))
    table = build_cost_table(g)
    worst = 0.0
    spacing = 1e-3
    for p in (1, 2):
        params = _random_params(p, rng)
        fd = gradient_fd(g, s0, params, spacing)
        vec = np.concatenate([params.gamma, params.beta])
        central = np.empty_like(fd)
        h = 1e-5
        for j in range(len(vec)):
            up, dn = vec.copy(), vec.copy()
            up[j] += h
            dn[j] -= h
            f_up = expected_cut(evolve(s0, table, QaoaParams(p, up[:p], up[p:])), table)
            f_dn = expected_cut(evolve(s0, table, QaoaParams(p, dn[:p], dn[p:])), table)
            central[j] = (f_up - f_dn) / (2 * h)
        worst = max(worst, float(np.max(np.abs(fd - central))))
    tol = tol_factor * spacing
    return CheckResult("gradient forward vs central", worst <= tol, f"max |diff| = {worst:.3e} (tol {tol:g})")


def check_gate_decomposition(trials: int = 100) -> CheckResult:
    rng = make_rng(20219)
    failures = sum(
        not gate_decomposition_check(float(rng.uniform(0, np.pi)), float(rng.uniform(0, 2 * np.pi)))
        for _ in range(trials)
    )
    return CheckResult("gate decomposition", failures == 0, f"{trials - failures}/{trials} angles match")


def check_rotation_orthogonality(tol: float = 1e-12, trials: int = 100) -> CheckResult:
    rng = make_rng(20220)
    worst = 0.0
    for _ in range(trials):
        r = pole_alignment_matrix(*rng.uniform(0, 2 * np.pi, 3))
        worst = max(worst, float(np.max(np.abs(r.T @ r - np.eye(3)))))
    return CheckResult("rotation orthogonality", worst <= tol, f"max |R^T R - I| = {worst:.3e}")


def check_objective_rotation_invariance(tol: float = 1e-9, trials: int = 20) -> CheckResult:
    rng = make_rng(20221)
    worst = 0.0
    for _ in range(trials):
        g = _random_weighted_graph(6, 0.5, rng)
        for rank in (2, 3):
            if rank == 2:
                emb = SphereEmbedding(2, rng.uniform(0, 2 * np.pi, 6))
            else:
                emb = SphereEmbedding(
                    3, np.column_stack([rng.uniform(0, np.pi, 6), rng.uniform(0, 2 * np.pi, 6)])
                )
            before = objective_bm(g, emb)
            for rotate in (rotate_uniform, rotate_vertex_at_top):
                worst = max(worst, abs(objective_bm(g, rotate(emb, rng)) - before))
    return CheckResult("objective rotation invariance", worst <= tol, f"max |delta obj| = {worst:.3e}")


def run_battery(mc_samples: int = 10**5) -> list[CheckResult]:
    """Full theorem-and-hygiene battery in a deterministic order."""
    return [
        check_stuck_pair_ceiling(),
        check_two_edge_plateau(),
        check_aligned_basis_landscape(),
        check_uniform_p0_half_weight(),
        check_component_additivity(),
        check_p0_bound(3, samples=mc_samples),
        check_p0_bound(2, samples=mc_samples),
        check_even_cycle_optimality(),
        check_norm_preservation(),
        check_gradient_agreement(),
        check_gate_decomposition(),
        check_rotation_orthogonality(),
        check_objective_rotation_invariance(),
    ]
