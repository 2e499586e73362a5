import numpy as np
import pytest

from qaoa_warmstart.analysis import (
    aggregate_curves,
    percentile_rho,
    scan_landscape,
    verify_p0_bound,
)
from qaoa_warmstart.bloch import ProductState, amplitudes, basis_product_state, plus_state
from qaoa_warmstart.graphs import cycle_graph, erdos_renyi_connected, max_cut_brute_force, single_edge, total_weight
from qaoa_warmstart.rng import make_rng
from qaoa_warmstart.simulator import build_cost_table, expected_cut
from qaoa_warmstart.training import StopReason, TrainingTrace

PLUS_MINUS = ProductState([[np.pi / 2, 0.0], [np.pi / 2, np.pi]])


def make_trace(values):
    T = len(values)
    return TrainingTrace(np.zeros((T, 1)), np.zeros((T, 1)), np.asarray(values, dtype=float), StopReason.STALLED)


class TestScanLandscape:
    def test_antipodal_start_peaks_on_beta_zero_row(self):
        g = cycle_graph(4)
        _, cut = max_cut_brute_force(g)
        ls = scan_landscape(g, basis_product_state(cut.bits), resolution=(21, 21))
        mid = len(ls.beta_grid) // 2
        assert ls.beta_grid[mid] == 0.0
        assert np.allclose(ls.values[mid], 4.0, atol=1e-9)
        assert np.max(ls.values) == pytest.approx(4.0, abs=1e-9)

    def test_stuck_start_is_flat(self):
        ls = scan_landscape(single_edge(), PLUS_MINUS, resolution=(15, 9))
        assert np.allclose(ls.values, 0.5, atol=1e-12)

    def test_origin_matches_sampling_value(self):
        rng = make_rng(0)
        g = erdos_renyi_connected(5, 0.5, 1, 1).graphs[0]
        qubits = np.column_stack([rng.uniform(0, np.pi, 5), rng.uniform(0, 2 * np.pi, 5)])
        s0 = ProductState(qubits)
        ls = scan_landscape(g, s0, resolution=(21, 21))
        p0 = expected_cut(amplitudes(s0), build_cost_table(g))
        i = len(ls.beta_grid) // 2
        j = len(ls.gamma_grid) // 2
        assert ls.gamma_grid[j] == 0.0 and ls.beta_grid[i] == 0.0
        assert ls.values[i, j] == pytest.approx(p0, abs=1e-12)

    def test_gamma_periodicity_for_unit_weights(self):
        # integer cuts make the cost phase 2*pi-periodic, so the window edges agree
        ls = scan_landscape(cycle_graph(4), plus_state(4), resolution=(21, 9))
        assert np.allclose(ls.values[:, 0], ls.values[:, -1], atol=1e-9)

    def test_time_reversal_symmetry_for_uniform_start(self):
        g = erdos_renyi_connected(5, 0.5, 1, 2).graphs[0]
        ls = scan_landscape(g, plus_state(5), resolution=(21, 9))
        assert np.allclose(ls.values, ls.values[::-1, ::-1], atol=1e-9)

    def test_antipodal_ridge_decreases_in_abs_beta(self):
        g = erdos_renyi_connected(5, 0.6, 1, 3).graphs[0]
        mc, cut = max_cut_brute_force(g)
        w = total_weight(g)
        ls = scan_landscape(g, basis_product_state(cut.bits), resolution=(11, 21))
        closed = 0.25 * ((2 * mc - w) * np.cos(4 * ls.beta_grid) + 2 * mc + w)
        assert np.allclose(ls.values, closed[:, None], atol=1e-9)
        mid = len(ls.beta_grid) // 2
        upper = ls.values[mid:, 0]
        assert np.all(np.diff(upper) < 0)  # strictly decreasing in |beta|

    def test_values_within_weight_bound(self):
        g = cycle_graph(5)
        ls = scan_landscape(g, plus_state(5), resolution=(15, 9))
        assert np.all(ls.values >= -1e-12)
        assert np.all(ls.values <= total_weight(g) + 1e-12)


class TestPercentileRho:
    def test_integer_index(self):
        assert percentile_rho([1, 2, 3, 4], 0.5) == 2.0

    def test_interpolated(self):
        assert percentile_rho([1, 2, 3, 4], 0.625) == pytest.approx(2.5)

    def test_singleton_full(self):
        assert percentile_rho([7], 1.0) == 7.0

    def test_clamps_below_first(self):
        assert percentile_rho([3, 9], 0.05) == 3.0

    def test_unsorted_input(self):
        assert percentile_rho([4, 1, 3, 2], 0.5) == 2.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            percentile_rho([], 0.5)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            percentile_rho([1.0], 1.5)


class TestAggregateCurves:
    def test_single_graph_matches_trajectory(self):
        runs = [make_trace([1.0, 2.0, 4.0])]
        curves = aggregate_curves([runs], [4.0], percentiles=(0.05, 0.5, 0.95))
        for c in curves:
            assert np.allclose(c.values, [0.25, 0.5, 1.0])

    def test_all_optimal(self):
        runs = [[make_trace([3.0, 3.0])], [make_trace([5.0, 5.0])]]
        curves = aggregate_curves(runs, [3.0, 5.0])
        for c in curves:
            assert np.allclose(c.values, 1.0)

    def test_percentiles_monotone(self):
        rng = make_rng(4)
        traces = [[make_trace(np.minimum(1.0, rng.uniform(0, 1, 6)))] for _ in range(9)]
        curves = aggregate_curves(traces, [1.0] * 9, percentiles=(0.05, 0.5, 0.95))
        lo, mid, hi = (c.values for c in curves)
        assert np.all(lo <= mid + 1e-12) and np.all(mid <= hi + 1e-12)

    def test_hold_last_for_short_traces(self):
        runs = [[make_trace([1.0, 2.0])], [make_trace([1.0, 1.5, 1.8])]]
        curves = aggregate_curves(runs, [2.0, 2.0], percentiles=(0.5,))
        assert len(curves[0].values) == 3
        assert curves[0].values[2] == pytest.approx(percentile_rho([1.0, 0.9], 0.5))

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            aggregate_curves([], [])
        with pytest.raises(ValueError):
            aggregate_curves([[make_trace([1.0])]], [1.0, 2.0])
        with pytest.raises(ValueError):
            aggregate_curves([[]], [1.0])


class TestVerifyP0Bound:
    def test_rank3_sweep(self):
        rows = verify_p0_bound(3, 10**4, make_rng(5))
        by_alpha = {round(r.alpha, 6): r for r in rows}
        at_pi = by_alpha[round(np.pi, 6)]
        assert at_pi.ratio == pytest.approx(2 / 3, abs=0.02)
        for r in rows:
            assert r.ratio >= 2 / 3 - 3 * r.std_error
        # away from the extreme angle the ratio strictly exceeds the bound
        assert by_alpha[round(np.pi / 6, 6)].ratio > 2 / 3

    def test_rank2_sweep(self):
        rows = verify_p0_bound(2, 10**4, make_rng(6))
        at_pi = [r for r in rows if abs(r.alpha - np.pi) < 1e-9][0]
        assert at_pi.ratio == pytest.approx(0.75, abs=0.02)
        for r in rows:
            assert r.ratio >= 0.75 - 3 * r.std_error

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            verify_p0_bound(3, 10**3, make_rng(7))

    def test_bad_rank(self):
        with pytest.raises(ValueError):
            verify_p0_bound(1, 10**4, make_rng(8))
