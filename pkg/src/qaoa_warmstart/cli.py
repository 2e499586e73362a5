"""Command-line interface.

Subcommands: enumerate, gen-er, solve-sdp, run, landscape, experiment,
verify-theory.  Report paths write figures (PNG) next to the CSV/JSON output.
Environment overrides: QAOA_WARMSTART_OUTPUT_DIR replaces any --out value and
QAOA_WARMSTART_WORKERS the worker count.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import experiment as exp
from .analysis import scan_landscape
from .bloch import plus_state
from .burer_monteiro import BmSolverConfig, objective_bm, solve_bm
from .formats import (
    read_graph,
    read_product_state,
    write_embedding,
    write_graph,
    write_json,
    write_landscape_csv,
    write_trace_csv,
    write_trace_sidecar,
)
from .graphs import enumerate_connected_5node, erdos_renyi_connected, max_cut_brute_force
from .training import TrainerConfig
from .verification import run_battery


def _out_dir(arg_value: str) -> Path:
    out = Path(os.environ.get(exp.OUTPUT_DIR_ENV, arg_value))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_collection(collection, out: Path) -> None:
    entries = []
    for k, g in enumerate(collection.graphs):
        name = f"g{k:03d}.json"
        write_graph(g, out / name)
        entries.append({"index": k, "path": name, "n": g.n, "edges": g.num_edges})
    write_json({"id": collection.id, "count": len(collection), "graphs": entries}, out / "manifest.json")
    print(f"wrote {len(collection)} graphs to {out}")


def cmd_enumerate(args) -> int:
    _write_collection(enumerate_connected_5node(), _out_dir(args.out))
    return 0


def cmd_gen_er(args) -> int:
    collection = erdos_renyi_connected(args.n, args.delta, args.count, args.seed)
    _write_collection(collection, _out_dir(args.out))
    return 0


def cmd_solve_sdp(args) -> int:
    g = read_graph(args.graph)
    cfg = BmSolverConfig(delta=args.delta, restarts=args.restarts, seed=args.seed)
    emb = solve_bm(g, args.rank, cfg)
    write_embedding(emb, args.out)
    print(f"objective = {objective_bm(g, emb):.6f} -> {args.out}")
    return 0


def _trainer_from_args(args) -> TrainerConfig:
    cfg = TrainerConfig(seed=args.seed)
    if args.max_epochs is not None:
        cfg = replace(cfg, max_epochs=args.max_epochs)
    if args.init_halfwidth is not None:
        cfg = replace(cfg, init_halfwidth=args.init_halfwidth)
    return cfg


def cmd_run(args) -> int:
    g = read_graph(args.graph)
    out = _out_dir(args.out)
    trainer = _trainer_from_args(args)
    variant = exp.Variant.parse(args.variant)
    init_state = read_product_state(args.init_state) if args.init_state else None
    mc, _ = max_cut_brute_force(g)

    if variant.kind == "standard" and init_state is None:
        from .training import train_standard_with_retry

        result = exp.PipelineResult(train_standard_with_retry(g, args.p, trainer), plus_state(g.n))
    else:
        result = exp.run_pipeline(
            g,
            variant.rank or 3,
            variant.rotation or "vertex-at-top",
            args.p,
            args.seed,
            trainer=trainer,
            init_state=init_state,
        )

    write_trace_csv(result.trace, out / "trace.csv")
    write_trace_sidecar(
        {"variant": args.variant, "p": args.p, "seed": args.seed, "max_cut": mc},
        result.trace.stopped_reason,
        out / "trace.json",
    )
    if result.rotated_embedding is not None:
        from .formats import embedding_to_dict, product_state_to_dict

        write_json(
            {
                "sdp_objective": result.sdp_objective,
                "kappa": result.kappa,
                "rotated_embedding": embedding_to_dict(result.rotated_embedding),
                "initial_state": product_state_to_dict(result.initial_state),
            },
            out / "provenance.json",
        )
    from .figures import render_training_curves

    render_training_curves({args.variant: [result.trace]}, mc, out / "trace.png")
    print(
        f"final F = {result.trace.final_f:.6f} (ratio {result.trace.final_f / mc:.4f}, "
        f"{result.trace.num_epochs} epochs, {result.trace.stopped_reason.value}) -> {out}"
    )
    return 0


def cmd_landscape(args) -> int:
    g = read_graph(args.graph)
    out = _out_dir(args.out)
    if args.init_state:
        s0 = read_product_state(args.init_state)
        label = "injected state"
    else:
        variant = exp.Variant.parse(args.variant)
        if variant.kind == "standard":
            s0 = plus_state(g.n)
        else:
            from .bloch import map_rank2, map_rank3
            from .geometry import rotate_uniform, rotate_vertex_at_top
            from .rng import make_rng, seed_to_int, spawn_seeds

            solve_seed, rot_seed = (seed_to_int(s) for s in spawn_seeds(args.seed, 2))
            emb = solve_bm(g, variant.rank, BmSolverConfig(seed=solve_seed))
            rotate = rotate_vertex_at_top if variant.rotation == "vertex-at-top" else rotate_uniform
            rotated = rotate(emb, make_rng(rot_seed))
            s0 = map_rank2(rotated) if variant.rank == 2 else map_rank3(rotated)
        label = args.variant
    ng, nb = (int(v) for v in args.resolution.split("x"))
    ls = scan_landscape(g, s0, resolution=(ng, nb))
    write_landscape_csv(ls, out / "landscape.csv")

    trajectories = None
    if args.trajectories > 0:
        from .rng import make_rng
        from .training import train

        rng = make_rng(args.seed)
        trajectories = []
        for _ in range(args.trajectories):
            start = np.array([rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi / 4, np.pi / 4)])
            trace = train(g, s0, 1, TrainerConfig(seed=args.seed, max_epochs=args.max_epochs or 300),
                          initial_params=start)
            trajectories.append((trace.gammas[:, 0], trace.betas[:, 0]))

    mc, _ = max_cut_brute_force(g)
    from .figures import render_landscape

    render_landscape(ls, out / "landscape.png", title=label, max_cut=mc, trajectories=trajectories)
    print(f"landscape ({ng}x{nb}) for {label} -> {out}")
    return 0


def cmd_experiment(args) -> int:
    variants = tuple(exp.Variant.parse(v.strip()) for v in args.variants.split(","))
    depths = tuple(int(d) for d in args.depths.split(","))
    trainer = TrainerConfig()
    if args.max_epochs is not None:
        trainer = replace(trainer, max_epochs=args.max_epochs)
    spec = exp.ExperimentSpec(
        collection=args.collection,
        depths=depths,
        variants=variants,
        runs_per_config=args.runs,
        seed=args.seed,
        output_dir=Path(args.out),
        er_n=args.er_n,
        er_delta=args.er_delta,
        er_count=args.er_count,
        graph_files=tuple(Path(p) for p in args.graph_files or ()),
        trainer=trainer,
        workers=args.workers,
    )
    out = exp.run_experiment(spec)
    print(f"experiment complete -> {out / 'manifest.json'}")
    return 0


def cmd_verify_theory(args) -> int:
    results = run_battery(mc_samples=args.mc_samples)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
        failed += not res.passed
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-warmstart",
        description="Warm-started QAOA toolkit for Max-Cut at simulation scale",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="write all connected 5-vertex graphs (one JSON per iso class)")
    p.add_argument("--out", default="graphs-5node")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gen-er", help="generate connected unit-weight G(n, delta) samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="graphs-er")
    p.set_defaults(func=cmd_gen_er)

    p = sub.add_parser("solve-sdp", help="run the low-rank relaxation solver on one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--rank", type=int, choices=(2, 3), required=True)
    p.add_argument("--delta", type=float, default=1.0 / 20.0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="embedding.json")
    p.set_defaults(func=cmd_solve_sdp)

    p = sub.add_parser("run", help="run one pipeline cell (or a standard training run)")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", default="standard", help="standard | warm-r{2,3}-{vertex,uniform}")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init-state", help="product-state JSON; bypasses solve/rotate/map")
    p.add_argument("--max-epochs", type=int, default=None)
    p.add_argument("--init-halfwidth", type=float, default=None)
    p.add_argument("--out", default="run-out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("landscape", help="dense depth-1 (gamma, beta) scan with heatmap")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", default="standard")
    p.add_argument("--init-state", help="product-state JSON to scan from")
    p.add_argument("--resolution", default="129x65")
    p.add_argument("--trajectories", type=int, default=0, help="overlay N full-range training paths")
    p.add_argument("--max-epochs", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="landscape-out")
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("experiment", help="run a full graph x variant x depth x run matrix")
    p.add_argument("--collection", choices=("enumerate-5node", "erdos-renyi", "files"), required=True)
    p.add_argument("--er-n", type=int, default=12)
    p.add_argument("--er-delta", type=float, default=0.5)
    p.add_argument("--er-count", type=int, default=50)
    p.add_argument("--graph-files", nargs="*", default=None)
    p.add_argument("--depths", default="1")
    p.add_argument("--variants", default="standard,warm-r3-vertex,warm-r3-uniform")
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-epochs", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="experiment-out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify-theory", help="run the theorem and numerics battery")
    p.add_argument("--mc-samples", type=int, default=10**5)
    p.set_defaults(func=cmd_verify_theory)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
