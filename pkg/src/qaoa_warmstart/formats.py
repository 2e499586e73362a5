"""On-disk formats: graph/embedding/product-state JSON, trace and landscape
CSV, aggregate CSV, and canonical (byte-reproducible) JSON dumps."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .analysis import AggregateCurve, Landscape
from .bloch import ProductState
from .geometry import SphereEmbedding
from .graphs import WeightedGraph
from .simulator import StateVector
from .training import StopReason, TrainingTrace


def canonical_json(obj) -> str:
    """Deterministic JSON encoding: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def write_json(obj, path: Path) -> None:
    Path(path).write_text(canonical_json(obj) + "\n")


# -- graphs -----------------------------------------------------------------

def graph_to_dict(g: WeightedGraph) -> dict:
    return {"n": g.n, "edges": [[u, v, w] for u, v, w in g.edges]}


def graph_from_dict(d: dict) -> WeightedGraph:
    return WeightedGraph.from_edge_list(int(d["n"]), d["edges"])


def write_graph(g: WeightedGraph, path: Path) -> None:
    write_json(graph_to_dict(g), path)


def read_graph(path: Path) -> WeightedGraph:
    return graph_from_dict(json.loads(Path(path).read_text()))


# -- embeddings and product states ------------------------------------------

def embedding_to_dict(x: SphereEmbedding) -> dict:
    if x.rank == 2:
        angles = [[float(t)] for t in x.angles]
    else:
        angles = [[float(t), float(p)] for t, p in x.angles]
    return {"rank": x.rank, "angles": angles}


def embedding_from_dict(d: dict) -> SphereEmbedding:
    rank = int(d["rank"])
    rows = d["angles"]
    if rank == 2:
        return SphereEmbedding(2, np.array([r[0] if isinstance(r, list) else r for r in rows]))
    return SphereEmbedding(3, np.array(rows, dtype=float))


def write_embedding(x: SphereEmbedding, path: Path) -> None:
    write_json(embedding_to_dict(x), path)


def read_embedding(path: Path) -> SphereEmbedding:
    return embedding_from_dict(json.loads(Path(path).read_text()))


def product_state_to_dict(s: ProductState) -> dict:
    return {"qubits": [[float(t), float(p)] for t, p in s.qubits]}


def product_state_from_dict(d: dict) -> ProductState:
    return ProductState(np.array(d["qubits"], dtype=float))


def write_product_state(s: ProductState, path: Path) -> None:
    write_json(product_state_to_dict(s), path)


def read_product_state(path: Path) -> ProductState:
    return product_state_from_dict(json.loads(Path(path).read_text()))


# -- training traces ---------------------------------------------------------

def write_trace_csv(trace: TrainingTrace, path: Path) -> None:
    p = trace.gammas.shape[1]
    header = (
        ["epoch"]
        + [f"gamma_{k + 1}" for k in range(p)]
        + [f"beta_{k + 1}" for k in range(p)]
        + ["f_value"]
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for t in range(trace.num_epochs):
            row = (
                [t]
                + [repr(float(v)) for v in trace.gammas[t]]
                + [repr(float(v)) for v in trace.betas[t]]
                + [repr(float(trace.f_values[t]))]
            )
            writer.writerow(row)


def read_trace_csv(path: Path, stopped_reason: StopReason = StopReason.STALLED) -> TrainingTrace:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    p = sum(1 for name in header if name.startswith("gamma_"))
    gammas = np.array([[float(v) for v in row[1 : 1 + p]] for row in body])
    betas = np.array([[float(v) for v in row[1 + p : 1 + 2 * p]] for row in body])
    f_values = np.array([float(row[-1]) for row in body])
    return TrainingTrace(gammas, betas, f_values, stopped_reason)


def write_trace_sidecar(config: dict, stopped_reason: StopReason, path: Path) -> None:
    write_json({"config": config, "stopped_reason": stopped_reason.value}, path)


# -- landscapes and aggregates ------------------------------------------------

def write_landscape_csv(ls: Landscape, path: Path) -> None:
    """Header row holds the gamma grid; the first column holds the beta grid."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + [repr(float(gm)) for gm in ls.gamma_grid])
        for i, beta in enumerate(ls.beta_grid):
            writer.writerow([repr(float(beta))] + [repr(float(v)) for v in ls.values[i]])


def read_landscape_csv(path: Path) -> Landscape:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    gamma_grid = np.array([float(v) for v in rows[0][1:]])
    beta_grid = np.array([float(row[0]) for row in rows[1:]])
    values = np.array([[float(v) for v in row[1:]] for row in rows[1:]])
    return Landscape(gamma_grid, beta_grid, values)


def write_aggregate_csv(curves: list[AggregateCurve], path: Path) -> None:
    horizon = max(len(c.values) for c in curves)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch"] + [f"r{c.percentile:g}" for c in curves])
        for t in range(horizon):
            writer.writerow([t] + [repr(float(c.values[t])) for c in curves])


def read_aggregate_csv(path: Path) -> list[AggregateCurve]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    curves = []
    for col, name in enumerate(header[1:], start=1):
        values = np.array([float(row[col]) for row in body])
        curves.append(AggregateCurve(float(name[1:]), values))
    return curves


# -- statevector debug dumps ---------------------------------------------------

def dump_statevector(s: StateVector, path: Path) -> None:
    """Interleaved re/im little-endian float64, index order as simulated."""
    buf = np.empty(2 * len(s.amps))
    buf[0::2] = s.amps.real
    buf[1::2] = s.amps.imag
    buf.astype("<f8").tofile(path)


def load_statevector(path: Path, n: int) -> StateVector:
    buf = np.fromfile(path, dtype="<f8")
    return StateVector(n, buf[0::2] + 1j * buf[1::2])
