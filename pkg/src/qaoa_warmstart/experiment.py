"""Full pipeline orchestration: solve, rotate, map, train, aggregate.

An experiment is a matrix of cells (graph x variant x depth x run); every
cell's seed is derived from the master seed by a keyed hash of its
coordinates, so cells can execute in any order (or in parallel) and still
reproduce byte-identical outputs.
"""
from __future__ import annotations

import concurrent.futures
import hashlib
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .analysis import DEFAULT_PERCENTILES, aggregate_curves
from .bloch import ProductState, map_rank2, map_rank3
from .burer_monteiro import BmSolverConfig, approximation_kappa, objective_bm, solve_bm
from .formats import (
    embedding_to_dict,
    product_state_to_dict,
    write_aggregate_csv,
    write_graph,
    write_json,
    write_trace_csv,
    write_trace_sidecar,
)
from .geometry import SphereEmbedding, rotate_uniform, rotate_vertex_at_top
from .graphs import GraphCollection, WeightedGraph, enumerate_connected_5node, erdos_renyi_connected, max_cut_brute_force
from .rng import make_rng, seed_to_int, spawn_seeds
from .training import TrainerConfig, TrainingTrace, train, train_standard_with_retry

ROTATION_KINDS = ("vertex-at-top", "uniform")
OUTPUT_DIR_ENV = "QAOA_WARMSTART_OUTPUT_DIR"
WORKERS_ENV = "QAOA_WARMSTART_WORKERS"
KAPPA_MAX_N = 24  # skip the brute-force ratio beyond this size


@dataclass(frozen=True)
class Variant:
    """One initialization strategy: the uniform superposition, or a warm start
    from a rank-k embedding re-aligned by the given rotation."""

    kind: str  # "standard" | "warm"
    rank: int | None = None
    rotation: str | None = None

    def __post_init__(self):
        if self.kind == "standard":
            if self.rank is not None or self.rotation is not None:
                raise ValueError("standard variant takes no rank or rotation")
        elif self.kind == "warm":
            if self.rank not in (2, 3):
                raise ValueError("warm variant needs rank 2 or 3")
            if self.rotation not in ROTATION_KINDS:
                raise ValueError(f"rotation must be one of {ROTATION_KINDS}")
        else:
            raise ValueError(f"unknown variant kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "standard":
            return "standard"
        return f"warm-r{self.rank}-{'vertex' if self.rotation == 'vertex-at-top' else 'uniform'}"

    @staticmethod
    def parse(label: str) -> "Variant":
        if label == "standard":
            return Variant("standard")
        parts = label.split("-")
        if len(parts) == 3 and parts[0] == "warm" and parts[1] in ("r2", "r3"):
            rotation = {"vertex": "vertex-at-top", "uniform": "uniform"}.get(parts[2])
            if rotation:
                return Variant("warm", int(parts[1][1:]), rotation)
        raise ValueError(f"cannot parse variant label {label!r}")


STANDARD = Variant("standard")


@dataclass
class PipelineResult:
    trace: TrainingTrace
    initial_state: ProductState
    rotated_embedding: SphereEmbedding | None = None
    sdp_objective: float | None = None
    kappa: float | None = None


def cell_seed(master_seed: int, *coords) -> int:
    """Order-independent per-cell seed: keyed hash of the cell coordinates."""
    key = int(master_seed).to_bytes(8, "little", signed=True)
    msg = "|".join(str(c) for c in coords).encode()
    digest = hashlib.blake2b(msg, key=key, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def run_pipeline(
    g: WeightedGraph,
    rank: int,
    rotation: str,
    p: int,
    seed: int,
    trainer: TrainerConfig = TrainerConfig(),
    solver: BmSolverConfig = BmSolverConfig(),
    init_state: ProductState | None = None,
) -> PipelineResult:
    """Solve -> rotate -> map -> train, returning the trace with provenance.

    ``init_state`` bypasses the solve/rotate/map stages and trains directly
    from the given product state.
    """
    solve_seed, rotate_seed, train_seed = (seed_to_int(s) for s in spawn_seeds(seed, 3))
    if init_state is not None:
        trace = train(g, init_state, p, replace(trainer, seed=train_seed))
        return PipelineResult(trace, init_state)

    if rotation not in ROTATION_KINDS:
        raise ValueError(f"rotation must be one of {ROTATION_KINDS}")
    embedding = solve_bm(g, rank, replace(solver, seed=solve_seed))
    sdp_objective = objective_bm(g, embedding)
    kappa = approximation_kappa(g, embedding) if g.n <= KAPPA_MAX_N else None
    rotate = rotate_vertex_at_top if rotation == "vertex-at-top" else rotate_uniform
    rotated = rotate(embedding, make_rng(rotate_seed))
    s0 = map_rank2(rotated) if rank == 2 else map_rank3(rotated)
    trace = train(g, s0, p, replace(trainer, seed=train_seed))
    return PipelineResult(trace, s0, rotated, sdp_objective, kappa)


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative description of a full experiment matrix."""

    collection: str  # "enumerate-5node" | "erdos-renyi" | "files"
    depths: tuple[int, ...]
    variants: tuple[Variant, ...]
    runs_per_config: int
    seed: int
    output_dir: Path
    er_n: int = 12
    er_delta: float = 0.5
    er_count: int = 50
    graph_files: tuple[Path, ...] = ()
    trainer: TrainerConfig = field(default_factory=TrainerConfig)
    solver: BmSolverConfig = field(default_factory=BmSolverConfig)
    percentiles: tuple[float, ...] = DEFAULT_PERCENTILES
    workers: int = 1
    render_figures: bool = True

    def __post_init__(self):
        if self.runs_per_config < 1:
            raise ValueError("runs_per_config must be at least 1")
        if not self.depths or not self.variants:
            raise ValueError("need at least one depth and one variant")

    def to_dict(self) -> dict:
        return {
            "collection": self.collection,
            "depths": list(self.depths),
            "variants": [v.label for v in self.variants],
            "runs_per_config": self.runs_per_config,
            "seed": self.seed,
            "er": {"n": self.er_n, "delta": self.er_delta, "count": self.er_count}
            if self.collection == "erdos-renyi"
            else None,
            "graph_files": [str(p) for p in self.graph_files],
            "percentiles": list(self.percentiles),
        }


def load_collection(spec: ExperimentSpec) -> GraphCollection:
    from .formats import read_graph

    if spec.collection == "enumerate-5node":
        return enumerate_connected_5node()
    if spec.collection == "erdos-renyi":
        return erdos_renyi_connected(spec.er_n, spec.er_delta, spec.er_count, spec.seed)
    if spec.collection == "files":
        if not spec.graph_files:
            raise ValueError("collection 'files' needs at least one graph file")
        return GraphCollection("files", tuple(read_graph(p) for p in spec.graph_files))
    raise ValueError(f"unknown collection {spec.collection!r}")


def _cell_id(graph_idx: int, variant: Variant, p: int, run: int) -> str:
    return f"g{graph_idx:03d}_{variant.label}_p{p}_run{run}"


def _execute_cell(args) -> tuple[str, object]:
    """Run one cell; returns (cell_id, PipelineResult | Exception)."""
    g, graph_idx, variant, p, run, seed, trainer, solver = args
    cid = _cell_id(graph_idx, variant, p, run)
    try:
        if variant.kind == "standard":
            trace = train_standard_with_retry(g, p, replace(trainer, seed=seed))
            from .bloch import plus_state

            result = PipelineResult(trace, plus_state(g.n))
        else:
            result = run_pipeline(
                g, variant.rank, variant.rotation, p, seed, trainer=trainer, solver=solver
            )
        return cid, result
    except Exception as exc:  # recorded per-cell; the experiment continues
        return cid, exc


def run_experiment(spec: ExperimentSpec) -> Path:
    """Execute the full matrix and write traces, aggregates, provenance,
    figures, and a deterministic manifest under the output directory."""
    out = Path(os.environ.get(OUTPUT_DIR_ENV, spec.output_dir))
    for sub in ("graphs", "traces", "aggregates", "embeddings", "figures"):
        (out / sub).mkdir(parents=True, exist_ok=True)

    collection = load_collection(spec)
    graphs = list(collection.graphs)
    max_cuts = []
    graph_entries = []
    for k, g in enumerate(graphs):
        mc, _ = max_cut_brute_force(g)
        max_cuts.append(mc)
        gpath = out / "graphs" / f"g{k:03d}.json"
        write_graph(g, gpath)
        graph_entries.append(
            {"index": k, "path": f"graphs/g{k:03d}.json", "n": g.n, "edges": g.num_edges, "max_cut": mc}
        )

    jobs = []
    for k, g in enumerate(graphs):
        for variant in spec.variants:
            for p in spec.depths:
                for run in range(spec.runs_per_config):
                    seed = cell_seed(spec.seed, k, variant.label, p, run)
                    jobs.append((g, k, variant, p, run, seed, spec.trainer, spec.solver))

    workers = int(os.environ.get(WORKERS_ENV, spec.workers))
    results: dict[str, object] = {}
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for cid, res in pool.map(_execute_cell, jobs, chunksize=1):
                results[cid] = res
    else:
        for job in jobs:
            cid, res = _execute_cell(job)
            results[cid] = res

    cells = []
    traces: dict[tuple[int, str, int], list[TrainingTrace]] = {}
    for g, k, variant, p, run, seed, _, _ in jobs:
        cid = _cell_id(k, variant, p, run)
        res = results[cid]
        if isinstance(res, Exception):
            cells.append(
                {"id": cid, "graph": k, "variant": variant.label, "p": p, "run": run,
                 "seed": seed, "status": "error", "error": f"{type(res).__name__}: {res}"}
            )
            continue
        trace_rel = f"traces/{cid}.csv"
        write_trace_csv(res.trace, out / trace_rel)
        write_trace_sidecar(
            {"graph": k, "variant": variant.label, "p": p, "run": run, "seed": seed},
            res.trace.stopped_reason,
            out / f"traces/{cid}.json",
        )
        entry = {
            "id": cid, "graph": k, "variant": variant.label, "p": p, "run": run,
            "seed": seed, "status": "ok", "trace": trace_rel,
            "epochs": res.trace.num_epochs, "final_f": res.trace.final_f,
        }
        if res.rotated_embedding is not None:
            prov_rel = f"embeddings/{cid}.json"
            write_json(
                {
                    "sdp_objective": res.sdp_objective,
                    "kappa": res.kappa,
                    "rotated_embedding": embedding_to_dict(res.rotated_embedding),
                    "initial_state": product_state_to_dict(res.initial_state),
                },
                out / prov_rel,
            )
            entry["provenance"] = prov_rel
            entry["sdp_objective"] = res.sdp_objective
            entry["kappa"] = res.kappa
        cells.append(entry)
        traces.setdefault((k, variant.label, p), []).append(res.trace)

    aggregate_entries = []
    for p in spec.depths:
        curves_by_label = {}
        for variant in spec.variants:
            per_graph = []
            mcs = []
            for k in range(len(graphs)):
                runs = traces.get((k, variant.label, p))
                if runs:
                    per_graph.append(runs)
                    mcs.append(max_cuts[k])
            if not per_graph:
                continue
            curves = aggregate_curves(per_graph, mcs, spec.percentiles)
            rel = f"aggregates/{variant.label}_p{p}.csv"
            write_aggregate_csv(curves, out / rel)
            aggregate_entries.append({"variant": variant.label, "p": p, "path": rel})
            curves_by_label[variant.label] = curves
        if spec.render_figures and curves_by_label:
            from .figures import render_aggregate_bands

            fig_rel = f"figures/aggregate_p{p}.png"
            render_aggregate_bands(curves_by_label, out / fig_rel, title=f"depth p={p}")
            aggregate_entries.append({"figure": fig_rel, "p": p})

    write_json(
        {
            "spec": spec.to_dict(),
            "collection_id": collection.id,
            "graphs": graph_entries,
            "cells": cells,
            "aggregates": aggregate_entries,
        },
        out / "manifest.json",
    )
    return out
