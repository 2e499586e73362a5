import numpy as np
import pytest

from qaoa_warmstart.bloch import (
    ProductState,
    amplitudes,
    basis_product_state,
    gate_decomposition_check,
    map_rank2,
    map_rank3,
    plus_state,
    qubit_amplitudes,
)
from qaoa_warmstart.geometry import SphereEmbedding, rotate_vertex_at_top, to_cartesian
from qaoa_warmstart.graphs import CapacityError, CutAssignment, cut_value, cycle_graph
from qaoa_warmstart.burer_monteiro import objective_bm
from qaoa_warmstart.rng import make_rng
from qaoa_warmstart.simulator import cut_distribution, index_to_bits


def measured_bloch_vector(amps):
    """(<X>, <Y>, <Z>) of a single qubit, straight from the amplitudes."""
    a0, a1 = amps
    return np.array(
        [2 * (np.conj(a0) * a1).real, 2 * (np.conj(a0) * a1).imag, abs(a0) ** 2 - abs(a1) ** 2]
    )


class TestMapRank3:
    def test_north_pole_is_zero_ket(self):
        ps = map_rank3(SphereEmbedding(3, np.array([[0.0, 0.7]])))
        assert np.allclose(qubit_amplitudes(*ps.qubits[0]), [1, 0], atol=1e-15)

    def test_south_pole_is_one_ket(self):
        ps = map_rank3(SphereEmbedding(3, np.array([[np.pi, 0.0]])))
        amps = qubit_amplitudes(*ps.qubits[0])
        assert abs(amps[0]) < 1e-15 and abs(abs(amps[1]) - 1) < 1e-15

    def test_x_axis_is_plus(self):
        ps = map_rank3(SphereEmbedding(3, np.array([[np.pi / 2, 0.0]])))
        assert np.allclose(qubit_amplitudes(*ps.qubits[0]), np.array([1, 1]) / np.sqrt(2), atol=1e-15)

    def test_wrong_rank(self):
        with pytest.raises(ValueError):
            map_rank3(SphereEmbedding(2, np.array([0.0])))

    def test_bloch_vector_matches_embedding(self):
        rng = make_rng(0)
        emb = SphereEmbedding(3, np.column_stack([rng.uniform(0, np.pi, 20), rng.uniform(0, 2 * np.pi, 20)]))
        ps = map_rank3(emb)
        for i in range(20):
            vec = measured_bloch_vector(qubit_amplitudes(*ps.qubits[i]))
            assert np.allclose(vec, to_cartesian(emb, i), atol=1e-9)


class TestMapRank2:
    def test_angle_zero(self):
        ps = map_rank2(SphereEmbedding(2, np.array([0.0])))
        assert np.allclose(qubit_amplitudes(*ps.qubits[0]), [1, 0], atol=1e-15)

    def test_angle_pi_is_one_up_to_phase(self):
        ps = map_rank2(SphereEmbedding(2, np.array([np.pi])))
        amps = qubit_amplitudes(*ps.qubits[0])
        assert abs(amps[0]) < 1e-15
        assert amps[1] == pytest.approx(1j, abs=1e-12)

    def test_right_angle_is_minus_y_state(self):
        ps = map_rank2(SphereEmbedding(2, np.array([np.pi / 2])))
        amps = qubit_amplitudes(*ps.qubits[0])
        assert np.allclose(amps, np.array([1, -1j]) / np.sqrt(2), atol=1e-12)
        assert np.allclose(measured_bloch_vector(amps), [0, -1, 0], atol=1e-12)

    def test_wrong_rank(self):
        with pytest.raises(ValueError):
            map_rank2(SphereEmbedding(3, np.array([[0.0, 0.0]])))

    def test_zero_x_component(self):
        rng = make_rng(1)
        ps = map_rank2(SphereEmbedding(2, rng.uniform(0, 2 * np.pi, 50)))
        for theta, phi in ps.qubits:
            vec = measured_bloch_vector(qubit_amplitudes(theta, phi))
            assert abs(vec[0]) < 1e-12

    def test_pairwise_angles_preserved(self):
        rng = make_rng(2)
        angles = rng.uniform(0, 2 * np.pi, 10)
        ps = map_rank2(SphereEmbedding(2, angles))
        vecs = np.array([measured_bloch_vector(qubit_amplitudes(t, p)) for t, p in ps.qubits])
        for i in range(10):
            for j in range(i + 1, 10):
                circle = np.cos(angles[i] - angles[j])
                assert vecs[i] @ vecs[j] == pytest.approx(circle, abs=1e-9)


class TestAmplitudes:
    def test_all_zero_kets(self):
        sv = amplitudes(basis_product_state([0, 0, 0]))
        assert sv.amps[0] == pytest.approx(1.0, abs=1e-15)
        assert np.allclose(sv.amps[1:], 0, atol=1e-15)

    def test_zero_one_ordering(self):
        sv = amplitudes(basis_product_state([0, 1]))
        assert abs(sv.amps[1]) == pytest.approx(1.0, abs=1e-12)  # |01> at index 1

    def test_plus_minus_pattern(self):
        ps = ProductState([[np.pi / 2, 0.0], [np.pi / 2, np.pi]])  # |+> (x) |->
        sv = amplitudes(ps)
        assert np.allclose(sv.amps, np.array([1, -1, 1, -1]) / 2, atol=1e-12)

    def test_unit_norm(self):
        rng = make_rng(3)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            ps = ProductState(np.column_stack([rng.uniform(0, np.pi, n), rng.uniform(0, 2 * np.pi, n)]))
            assert amplitudes(ps).norm_sq() == pytest.approx(1.0, abs=1e-12)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            amplitudes(plus_state(21))


class TestGateDecomposition:
    def test_origin(self):
        assert gate_decomposition_check(0.0, 0.0)

    def test_equator(self):
        assert gate_decomposition_check(np.pi / 2, 0.0)

    def test_random_angles(self):
        rng = make_rng(4)
        for _ in range(100):
            assert gate_decomposition_check(float(rng.uniform(0, np.pi)), float(rng.uniform(0, 2 * np.pi)))


class TestAntipodalBasisState:
    def test_vertex_at_top_recovers_encoded_cut(self):
        # exact antipodal embedding encoding a maximum cut of the 4-cycle
        g = cycle_graph(4)
        bits = (0, 1, 0, 1)
        emb = SphereEmbedding(3, np.array([[np.pi * b, 0.0] for b in bits]))
        rng = make_rng(5)
        for _ in range(5):
            rotated = rotate_vertex_at_top(emb, rng)
            dist = cut_distribution(amplitudes(map_rank3(rotated)))
            top = int(np.argmax(dist))
            assert dist[top] == pytest.approx(1.0, abs=1e-12)
            achieved = cut_value(g, CutAssignment(index_to_bits(top, 4)))
            assert achieved == pytest.approx(objective_bm(g, emb), abs=1e-9)
