"""Hybrid training loop: Adam on the negated expected cut with exact
forward-difference gradients, near-zero parameter initialization, and a
stall-based stopping rule."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .bloch import ProductState, amplitudes, plus_state
from .graphs import WeightedGraph
from .rng import make_rng, seed_to_int, spawn_seeds
from .simulator import CostTable, QaoaParams, StateVector, build_cost_table, evolve, expected_cut

# a run whose trace is shorter than stall_epochs + MIN_PRODUCTIVE_EPOCHS never
# escaped its initialization; the standard-superposition start is retried
MIN_PRODUCTIVE_EPOCHS = 5


class StopReason(enum.Enum):
    STALLED = "stalled"
    MAX_EPOCHS = "max-epochs"
    SADDLE_ABORT = "saddle-abort"


@dataclass(frozen=True)
class TrainerConfig:
    step_size: float = 1e-3
    decay1: float = 0.9
    decay2: float = 0.999
    epsilon: float = 1e-7
    grad_spacing: float = 1e-3
    stall_improvement_factor: float = 1e-6
    stall_epochs: int = 10
    init_halfwidth: float = 1e-4
    max_epochs: int = 5000
    saddle_retry_limit: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in ("step_size", "decay1", "decay2", "epsilon", "grad_spacing",
                     "stall_improvement_factor", "init_halfwidth"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.stall_epochs < 1:
            raise ValueError("stall_epochs must be at least 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")


@dataclass
class TrainingTrace:
    """Per-epoch parameter and objective record.

    Row t holds the parameters after t Adam steps (row 0 is the
    initialization) and the expected cut evaluated at those parameters.
    """

    gammas: np.ndarray  # (T, p)
    betas: np.ndarray  # (T, p)
    f_values: np.ndarray  # (T,)
    stopped_reason: StopReason

    @property
    def num_epochs(self) -> int:
        return len(self.f_values)

    @property
    def final_f(self) -> float:
        return float(self.f_values[-1])

    def params_at(self, t: int) -> QaoaParams:
        p = self.gammas.shape[1]
        return QaoaParams(p, self.gammas[t], self.betas[t])


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @staticmethod
    def zeros(dim: int) -> "AdamState":
        return AdamState(np.zeros(dim), np.zeros(dim))


def _pack(params: QaoaParams) -> np.ndarray:
    return np.concatenate([params.gamma, params.beta])


def _unpack(vec: np.ndarray, p: int) -> QaoaParams:
    return QaoaParams(p, vec[:p].copy(), vec[p:].copy())


def _f_value(table: CostTable, s0: StateVector, vec: np.ndarray, p: int) -> float:
    return expected_cut(evolve(s0, table, _unpack(vec, p)), table)


def _gradient_fd(table: CostTable, s0: StateVector, vec: np.ndarray, p: int, spacing: float) -> np.ndarray:
    base = _f_value(table, s0, vec, p)
    grad = np.empty(len(vec))
    for j in range(len(vec)):
        shifted = vec.copy()
        shifted[j] += spacing
        grad[j] = (_f_value(table, s0, shifted, p) - base) / spacing
    return grad


def gradient_fd(g: WeightedGraph, s0: StateVector, params: QaoaParams, spacing: float) -> np.ndarray:
    """Forward-difference gradient of the expected cut, one component per
    parameter in (gamma_1..gamma_p, beta_1..beta_p) order.

    Every expectation is computed exactly via statevector evolution.
    """
    if spacing <= 0:
        raise ValueError("finite-difference spacing must be positive")
    table = build_cost_table(g)
    return _gradient_fd(table, s0, _pack(params), params.p, spacing)


def adam_step(
    vec: np.ndarray, grad: np.ndarray, state: AdamState, cfg: TrainerConfig
) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam update; ``grad`` is the gradient of the loss
    being minimized."""
    t = state.t + 1
    m = cfg.decay1 * state.m + (1 - cfg.decay1) * grad
    v = cfg.decay2 * state.v + (1 - cfg.decay2) * grad**2
    m_hat = m / (1 - cfg.decay1**t)
    v_hat = v / (1 - cfg.decay2**t)
    new_vec = vec - cfg.step_size * m_hat / (np.sqrt(v_hat) + cfg.epsilon)
    return new_vec, AdamState(m, v, t)


def train(
    g: WeightedGraph,
    s0: ProductState,
    p: int,
    cfg: TrainerConfig,
    initial_params: np.ndarray | None = None,
) -> TrainingTrace:
    """Maximize the depth-p expected cut from the given product state.

    Parameters start at gamma_k, beta_k ~ U(-init_halfwidth, +init_halfwidth)
    unless ``initial_params`` (packed gamma||beta vector) is given.  Stops once
    the best value seen has improved by no more than
    stall_improvement_factor * sum|w_e| over the last stall_epochs epochs, or
    at max_epochs.
    """
    if p < 1:
        raise ValueError("training requires depth p >= 1")
    if s0.n != g.n:
        raise ValueError(f"initial state has {s0.n} qubits for a {g.n}-vertex graph")
    table = build_cost_table(g)
    s0_vec = amplitudes(s0)
    if initial_params is not None:
        vec = np.asarray(initial_params, dtype=float).copy()
        if vec.shape != (2 * p,):
            raise ValueError(f"expected {2 * p} packed parameters")
    else:
        vec = make_rng(cfg.seed).uniform(-cfg.init_halfwidth, cfg.init_halfwidth, size=2 * p)

    tol = cfg.stall_improvement_factor * sum(abs(w) for _, _, w in g.edges)
    gammas = [vec[:p].copy()]
    betas = [vec[p:].copy()]
    f_values = [_f_value(table, s0_vec, vec, p)]
    best_at = [f_values[0]]

    adam = AdamState.zeros(2 * p)
    reason = StopReason.MAX_EPOCHS
    for _ in range(cfg.max_epochs):
        grad_f = _gradient_fd(table, s0_vec, vec, p, cfg.grad_spacing)
        vec, adam = adam_step(vec, -grad_f, adam, cfg)
        f = _f_value(table, s0_vec, vec, p)
        gammas.append(vec[:p].copy())
        betas.append(vec[p:].copy())
        f_values.append(f)
        best_at.append(max(best_at[-1], f))
        e = len(best_at) - 1
        if e >= cfg.stall_epochs and best_at[e] - best_at[e - cfg.stall_epochs] <= tol:
            reason = StopReason.STALLED
            break

    return TrainingTrace(np.array(gammas), np.array(betas), np.array(f_values), reason)


def train_standard_with_retry(g: WeightedGraph, p: int, cfg: TrainerConfig) -> TrainingTrace:
    """Train from the uniform superposition, retrying fresh initializations
    for runs that stall without ever escaping the near-zero start.

    The final attempt is returned regardless; if it too never escaped, its
    stop reason is SADDLE_ABORT.
    """
    threshold = cfg.stall_epochs + MIN_PRODUCTIVE_EPOCHS
    trace = None
    for seed in spawn_seeds(cfg.seed, cfg.saddle_retry_limit + 1):
        attempt_cfg = replace(cfg, seed=seed_to_int(seed))
        trace = train(g, plus_state(g.n), p, attempt_cfg)
        if trace.num_epochs >= threshold:
            return trace
    trace.stopped_reason = StopReason.SADDLE_ABORT
    return trace


def best_of_runs(traces, t: int) -> float:
    """Best objective at epoch t across runs; stopped traces hold their final
    value for epochs beyond their length."""
    if not traces:
        raise ValueError("need at least one trace")
    return max(float(tr.f_values[min(t, tr.num_epochs - 1)]) for tr in traces)
