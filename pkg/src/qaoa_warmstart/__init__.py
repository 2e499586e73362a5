"""Warm-started QAOA toolkit for Max-Cut.

A classical low-rank sphere-embedding relaxation seeds an exact statevector
QAOA simulator: solve, randomly re-align, map to qubits, then train the
variational angles.  Includes landscape scanning, percentile aggregation over
graph collections, and a reproducible experiment harness.
"""
from .analysis import (
    AggregateCurve,
    Landscape,
    aggregate_curves,
    percentile_rho,
    scan_landscape,
    verify_p0_bound,
)
from .bloch import ProductState, amplitudes, basis_product_state, map_rank2, map_rank3, plus_state
from .burer_monteiro import (
    BmSolverConfig,
    approximation_kappa,
    hyperplane_round,
    normalize_angles,
    objective_bm,
    solve_bm,
)
from .experiment import ExperimentSpec, Variant, run_experiment, run_pipeline
from .geometry import SphereEmbedding, from_cartesian, rotate_uniform, rotate_vertex_at_top, to_cartesian
from .graphs import (
    CapacityError,
    CutAssignment,
    GraphCollection,
    WeightedGraph,
    connected_components,
    cut_value,
    enumerate_connected_5node,
    erdos_renyi_connected,
    max_cut_brute_force,
    total_weight,
)
from .simulator import (
    CostTable,
    QaoaParams,
    StateVector,
    apply_cost_layer,
    apply_mixer_layer,
    build_cost_table,
    cut_distribution,
    evolve,
    expected_cut,
)
from .training import (
    TrainerConfig,
    TrainingTrace,
    adam_step,
    best_of_runs,
    gradient_fd,
    train,
    train_standard_with_retry,
)

__version__ = "0.1.0"
