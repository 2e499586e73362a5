import json

import numpy as np

from qaoa_warmstart.analysis import AggregateCurve, Landscape
from qaoa_warmstart.bloch import ProductState
from qaoa_warmstart.formats import (
    canonical_json,
    dump_statevector,
    load_statevector,
    read_aggregate_csv,
    read_embedding,
    read_graph,
    read_landscape_csv,
    read_product_state,
    read_trace_csv,
    write_aggregate_csv,
    write_embedding,
    write_graph,
    write_landscape_csv,
    write_product_state,
    write_trace_csv,
    write_trace_sidecar,
)
from qaoa_warmstart.geometry import SphereEmbedding
from qaoa_warmstart.graphs import WeightedGraph
from qaoa_warmstart.rng import make_rng
from qaoa_warmstart.simulator import StateVector
from qaoa_warmstart.training import StopReason, TrainingTrace


class TestGraphJson:
    def test_round_trip(self, tmp_path):
        g = WeightedGraph(4, ((0, 1, 1.5), (2, 3, 0.25)))
        write_graph(g, tmp_path / "g.json")
        assert read_graph(tmp_path / "g.json") == g

    def test_two_element_edges_default_weight(self, tmp_path):
        (tmp_path / "g.json").write_text('{"n": 3, "edges": [[0, 1], [1, 2]]}')
        g = read_graph(tmp_path / "g.json")
        assert g.edges == ((0, 1, 1.0), (1, 2, 1.0))


class TestEmbeddingJson:
    def test_rank2_round_trip(self, tmp_path):
        emb = SphereEmbedding(2, np.array([0.1, 2.5, 4.0]))
        write_embedding(emb, tmp_path / "e.json")
        back = read_embedding(tmp_path / "e.json")
        assert back.rank == 2 and np.allclose(back.angles, emb.angles)

    def test_rank3_round_trip(self, tmp_path):
        emb = SphereEmbedding(3, np.array([[0.1, 2.5], [3.0, 1.0]]))
        write_embedding(emb, tmp_path / "e.json")
        back = read_embedding(tmp_path / "e.json")
        assert back.rank == 3 and np.allclose(back.angles, emb.angles)


class TestProductStateJson:
    def test_round_trip(self, tmp_path):
        ps = ProductState([[0.3, 1.1], [np.pi, 0.0]])
        write_product_state(ps, tmp_path / "s.json")
        assert np.allclose(read_product_state(tmp_path / "s.json").qubits, ps.qubits)


class TestTraceCsv:
    def test_round_trip(self, tmp_path):
        rng = make_rng(0)
        trace = TrainingTrace(
            rng.normal(size=(7, 2)), rng.normal(size=(7, 2)), rng.normal(size=7), StopReason.STALLED
        )
        write_trace_csv(trace, tmp_path / "t.csv")
        back = read_trace_csv(tmp_path / "t.csv")
        assert np.array_equal(back.gammas, trace.gammas)
        assert np.array_equal(back.betas, trace.betas)
        assert np.array_equal(back.f_values, trace.f_values)

    def test_sidecar(self, tmp_path):
        write_trace_sidecar({"p": 2, "seed": 5}, StopReason.MAX_EPOCHS, tmp_path / "t.json")
        data = json.loads((tmp_path / "t.json").read_text())
        assert data["stopped_reason"] == "max-epochs"
        assert data["config"]["p"] == 2


class TestLandscapeCsv:
    def test_round_trip(self, tmp_path):
        rng = make_rng(1)
        ls = Landscape(np.linspace(-np.pi, np.pi, 5), np.linspace(-np.pi / 4, np.pi / 4, 3), rng.normal(size=(3, 5)))
        write_landscape_csv(ls, tmp_path / "l.csv")
        back = read_landscape_csv(tmp_path / "l.csv")
        assert np.array_equal(back.gamma_grid, ls.gamma_grid)
        assert np.array_equal(back.beta_grid, ls.beta_grid)
        assert np.array_equal(back.values, ls.values)


class TestAggregateCsv:
    def test_round_trip(self, tmp_path):
        curves = [AggregateCurve(0.05, np.array([0.5, 0.6])), AggregateCurve(0.95, np.array([0.9, 1.0]))]
        write_aggregate_csv(curves, tmp_path / "a.csv")
        back = read_aggregate_csv(tmp_path / "a.csv")
        assert back[0].percentile == 0.05 and back[1].percentile == 0.95
        assert np.array_equal(back[0].values, curves[0].values)
        assert np.array_equal(back[1].values, curves[1].values)


class TestStatevectorDump:
    def test_round_trip(self, tmp_path):
        rng = make_rng(2)
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        amps /= np.linalg.norm(amps)
        sv = StateVector(3, amps)
        dump_statevector(sv, tmp_path / "sv.bin")
        back = load_statevector(tmp_path / "sv.bin", 3)
        assert np.array_equal(back.amps, sv.amps)

    def test_layout_is_interleaved_little_endian(self, tmp_path):
        sv = StateVector(1, np.array([0.6, 0.8j]))
        dump_statevector(sv, tmp_path / "sv.bin")
        raw = np.fromfile(tmp_path / "sv.bin", dtype="<f8")
        assert np.array_equal(raw, [0.6, 0.0, 0.0, 0.8])


class TestCanonicalJson:
    def test_key_order_independent(self):
        assert canonical_json({"b": 1, "a": 2}) == canonical_json({"a": 2, "b": 1})
