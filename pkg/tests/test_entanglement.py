import math

import numpy as np
import pytest

from commonbath import (
    ConcurrenceSeries,
    InitialSpec,
    ModelParams,
    PairClass,
    build_pair_rho,
    closed_form_concurrence,
    detect_esd,
    evolve_amplitudes,
    partial_trace_oracle,
    sector_density_matrix,
    stationary_concurrence,
    steady_graph,
    survival_probability,
    validate_density_matrix,
    wootters_concurrence,
    zero_crossings,
)

WEAK = {n: math.sqrt(0.15 / n) for n in range(2, 13)}  # weak yet settled by tau = 60


def bell_rho():
    psi = np.zeros(4, dtype=complex)
    psi[1] = psi[2] = 1.0 / math.sqrt(2.0)  # (|10> + |01>)/sqrt(2)
    return np.outer(psi, psi.conj())


class TestWoottersConcurrence:
    def test_bell_state(self):
        assert wootters_concurrence(bell_rho()) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[3, 3] = 1.0  # |00><00|
        assert wootters_concurrence(rho) == 0.0

    def test_mixed_x_state_against_closed_form(self):
        params = ModelParams(n=6, R=0.1)
        spec = InitialSpec.two_qubit(s=0.0)
        rho = build_pair_rho(params, spec, PairClass.KL, 2.0)
        closed = closed_form_concurrence(params, spec, PairClass.KL, 2.0)
        assert wootters_concurrence(rho) == pytest.approx(closed, abs=1e-10)

    def test_rejects_invalid_matrices(self):
        rho = bell_rho()
        rho[0, 3] += 1e-6  # breaks hermiticity
        with pytest.raises(ValueError):
            wootters_concurrence(rho)
        with pytest.raises(ValueError):
            wootters_concurrence(2.0 * bell_rho())  # trace 2
        neg = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            wootters_concurrence(neg)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            wootters_concurrence(np.eye(3) / 3.0)


class TestBuildPairRho:
    def test_w_pair_at_start(self):
        rho = build_pair_rho(ModelParams(n=4, R=1.0), InitialSpec.w_state(),
                             PairClass.PAIR_W, 0.0)
        expected = np.zeros((4, 4), dtype=complex)
        expected[1:3, 1:3] = 0.25
        expected[3, 3] = 0.5
        assert np.allclose(rho, expected, atol=1e-14)

    def test_spectator_pair_starts_separable(self):
        rho = build_pair_rho(ModelParams(n=4, R=1.0), InitialSpec.two_qubit(s=0.0),
                             PairClass.JM, 0.0)
        expected = np.zeros((4, 4), dtype=complex)
        expected[3, 3] = 1.0
        assert np.allclose(rho, expected, atol=1e-14)

    def test_tagged_pair_settles_to_its_limit(self):
        n = 6
        params = ModelParams(n=n, R=WEAK[n])
        spec = InitialSpec.two_qubit(s=0.0)
        rho = build_pair_rho(params, spec, PairClass.KL, 60.0)
        # stationary populations (n-2)^2/(2 n^2) on |10> and |01>
        pop = (n - 2) ** 2 / (2.0 * n**2)
        assert rho[1, 1].real == pytest.approx(pop, abs=1e-3)
        assert wootters_concurrence(rho) == pytest.approx(16.0 / 36.0, abs=1e-3)

    def test_pair_and_family_must_match(self):
        params = ModelParams(n=4, R=1.0)
        with pytest.raises(ValueError):
            build_pair_rho(params, InitialSpec.w_state(), PairClass.KL, 1.0)
        with pytest.raises(ValueError):
            build_pair_rho(params, InitialSpec.two_qubit(), PairClass.PAIR_W, 1.0)

    def test_spectator_classes_need_spectators(self):
        params = ModelParams(n=2, R=1.0)
        for pair in (PairClass.KJ, PairClass.JM):
            with pytest.raises(ValueError):
                build_pair_rho(params, InitialSpec.two_qubit(), pair, 1.0)

    @pytest.mark.parametrize("pair", [PairClass.KL, PairClass.KJ, PairClass.JM])
    def test_matrices_are_valid_states(self, pair):
        params = ModelParams(n=5, R=10.0)
        spec = InitialSpec.two_qubit(s=0.3, phi=1.2)
        for tau in np.linspace(0.0, 12.0, 40):
            validate_density_matrix(build_pair_rho(params, spec, pair, float(tau)))


class TestClosedFormConcurrence:
    def test_w_pair_initial_value(self):
        params = ModelParams(n=4, R=1.0)
        value = closed_form_concurrence(params, InitialSpec.w_state(), PairClass.PAIR_W, 0.0)
        assert value == 0.5

    def test_w_pair_tracks_survival_probability(self):
        params = ModelParams(n=8, R=10.0)
        spec = InitialSpec.w_state()
        for tau in np.linspace(0.0, 10.0, 101):
            c = closed_form_concurrence(params, spec, PairClass.PAIR_W, float(tau))
            assert c == pytest.approx(0.25 * survival_probability(params, float(tau)), abs=1e-12)

    def test_tagged_pair_limit_matches_table(self):
        n = 6
        params = ModelParams(n=n, R=WEAK[n])
        c = closed_form_concurrence(params, InitialSpec.two_qubit(s=0.0), PairClass.KL, 60.0)
        assert c == pytest.approx((n - 2) ** 2 / n**2, abs=1e-3)

    def test_single_excitation_limit_matches_table(self):
        n = 4
        params = ModelParams(n=n, R=WEAK[n])
        c = closed_form_concurrence(params, InitialSpec.two_qubit(s=-1.0), PairClass.KJ, 60.0)
        assert c == pytest.approx(2.0 * (n - 1) / n**2, abs=1e-3)
        assert c == pytest.approx(0.375, abs=1e-3)

    def test_agrees_with_generic_route_on_a_slice(self):
        params = ModelParams(n=8, R=1.0)
        spec = InitialSpec.two_qubit(s=0.5, phi=math.pi / 3.0)
        for pair in (PairClass.KL, PairClass.KJ, PairClass.JM):
            for tau in np.linspace(0.0, 15.0, 30):
                closed = closed_form_concurrence(params, spec, pair, float(tau))
                generic = wootters_concurrence(build_pair_rho(params, spec, pair, float(tau)))
                assert abs(closed - generic) < 1e-9


class TestStationaryConcurrence:
    @pytest.mark.parametrize("n", range(3, 13))
    def test_maximally_entangled_family_table(self, n):
        spec = InitialSpec.two_qubit(s=0.0)
        assert stationary_concurrence(n, spec, PairClass.KL) == pytest.approx(
            (n - 2) ** 2 / n**2, abs=1e-12)
        assert stationary_concurrence(n, spec, PairClass.KJ) == pytest.approx(
            2.0 * (n - 2) / n**2, abs=1e-12)
        assert stationary_concurrence(n, spec, PairClass.JM) == pytest.approx(
            4.0 / n**2, abs=1e-12)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_single_excitation_family_table(self, n):
        spec = InitialSpec.two_qubit(s=-1.0)
        assert stationary_concurrence(n, spec, PairClass.KJ) == pytest.approx(
            2.0 * (n - 1) / n**2, abs=1e-12)
        assert stationary_concurrence(n, spec, PairClass.JM) == pytest.approx(
            2.0 / n**2, abs=1e-12)

    def test_known_spot_values(self):
        spec = InitialSpec.two_qubit(s=0.0)
        assert stationary_concurrence(4, spec, PairClass.KJ) == pytest.approx(0.25, abs=1e-12)
        assert stationary_concurrence(4, spec, PairClass.JM) == pytest.approx(0.25, abs=1e-12)
        spec = InitialSpec.two_qubit(s=-1.0)
        assert stationary_concurrence(12, spec, PairClass.JM) == pytest.approx(
            2.0 / 144.0, abs=1e-12)

    def test_bell_pair_loses_everything(self):
        assert stationary_concurrence(2, InitialSpec.two_qubit(s=0.0), PairClass.KL) == 0.0

    def test_cross_bond_peaks_at_four_qubits(self):
        spec = InitialSpec.two_qubit(s=0.0)
        values = {n: stationary_concurrence(n, spec, PairClass.KJ) for n in range(3, 51)}
        assert max(values, key=values.get) == 4
        assert values[4] == pytest.approx(0.25, abs=1e-12)

    def test_w_family_has_no_stationary_entanglement(self):
        assert stationary_concurrence(6, InitialSpec.w_state(), PairClass.PAIR_W) == 0.0

    def test_general_s_matches_a_long_run(self):
        n = 5
        spec = InitialSpec.two_qubit(s=0.37, phi=2.1)
        params = ModelParams(n=n, R=WEAK[n])
        for pair in (PairClass.KL, PairClass.KJ, PairClass.JM):
            limit = stationary_concurrence(n, spec, pair)
            late = closed_form_concurrence(params, spec, pair, 60.0)
            assert late == pytest.approx(limit, abs=1e-3)


class TestDetectEsd:
    def test_w_pair_dies_at_each_crossing(self):
        params = ModelParams(n=4, R=10.0)
        spec = InitialSpec.w_state()
        crossings = zero_crossings(params, 5)
        taus = np.unique(np.concatenate([np.linspace(0.0, 3.0, 4001), crossings]))
        values = np.array([
            closed_form_concurrence(params, spec, PairClass.PAIR_W, float(t)) for t in taus
        ])
        events = detect_esd(ConcurrenceSeries(taus=taus, values=values))
        deaths = np.array([d for d, _ in events[: len(crossings)]])
        assert len(events) >= len(crossings)
        assert np.max(np.abs(deaths - crossings)) < 2e-3

    def test_tagged_pair_of_two_qubits_ends_dead(self):
        # a Bell pair in the strong regime dies and, once the envelope is
        # gone, never revives: the last event has no revival time
        params = ModelParams(n=2, R=10.0)
        spec = InitialSpec.two_qubit(s=0.0)
        crossings = zero_crossings(params, 40)
        taus = np.unique(np.concatenate([np.linspace(0.0, 50.0, 40001), crossings]))
        values = np.array([
            closed_form_concurrence(params, spec, PairClass.KL, float(t)) for t in taus
        ])
        events = detect_esd(ConcurrenceSeries(taus=taus, values=values))
        assert len(events) >= 1
        assert events[-1][1] is None
        for death, revival in events[:-1]:
            assert revival is not None and revival > death

    def test_monotone_positive_series_has_no_events(self):
        taus = np.linspace(0.0, 10.0, 200)
        values = 0.3 + 0.01 * taus
        assert detect_esd(ConcurrenceSeries(taus=taus, values=values)) == []

    def test_series_starting_dead_is_not_a_death(self):
        taus = np.linspace(0.0, 1.0, 200)
        values = np.linspace(0.0, 0.4, 200)  # starts at zero, grows
        assert detect_esd(ConcurrenceSeries(taus=taus, values=values)) == []

    def test_refuses_undersampled_series(self):
        taus = np.linspace(0.0, 1.0, 6)
        values = np.array([1.0, 0.0, 1.0, 0.0, 1.0, 0.0])
        with pytest.raises(ValueError, match="undersampled"):
            detect_esd(ConcurrenceSeries(taus=taus, values=values))

    def test_series_validation(self):
        with pytest.raises(ValueError):
            ConcurrenceSeries(taus=np.array([0.0, 0.0, 1.0]), values=np.zeros(3))
        with pytest.raises(ValueError):
            ConcurrenceSeries(taus=np.array([0.0, 1.0]), values=np.zeros(3))


class TestPartialTraceOracle:
    def test_two_qubit_register_is_a_relabelling(self):
        params = ModelParams(n=2, R=0.7)
        spec = InitialSpec.two_qubit(s=0.2, phi=0.5)
        full = sector_density_matrix(params, spec, 1.3)
        rho = partial_trace_oracle(full, (1, 2))
        direct = build_pair_rho(params, spec, PairClass.KL, 1.3)
        assert np.max(np.abs(rho - direct)) < 1e-14

    def test_matches_tagged_pair_matrix(self):
        params = ModelParams(n=6, R=0.1)
        spec = InitialSpec.two_qubit(s=0.0)
        full = sector_density_matrix(params, spec, 3.0)
        rho = partial_trace_oracle(full, (1, 2))
        direct = build_pair_rho(params, spec, PairClass.KL, 3.0)
        assert np.max(np.abs(rho - direct)) < 1e-12

    def test_matches_spectator_pair_structure(self):
        params = ModelParams(n=6, R=1.0)
        spec = InitialSpec.two_qubit(s=0.4, phi=2.2)
        full = sector_density_matrix(params, spec, 2.0)
        rho = partial_trace_oracle(full, (4, 6))
        direct = build_pair_rho(params, spec, PairClass.JM, 2.0)
        assert np.max(np.abs(rho - direct)) < 1e-12
        assert rho[0, 0] == 0.0  # no double excitation
        assert rho[1, 1] == pytest.approx(rho[2, 2], abs=1e-14)
        assert rho[1, 2] == pytest.approx(rho[1, 1], abs=1e-14)

    def test_swap_of_kept_labels_transposes_the_block(self):
        params = ModelParams(n=5, R=1.0)
        spec = InitialSpec.two_qubit(s=-0.3, phi=1.0)
        full = sector_density_matrix(params, spec, 1.0)
        ab = partial_trace_oracle(full, (1, 4))
        ba = partial_trace_oracle(full, (4, 1))
        assert ab[1, 1] == pytest.approx(ba[2, 2], abs=1e-14)
        assert ab[1, 2] == pytest.approx(np.conj(ba[1, 2]), abs=1e-14)

    def test_w_state_register_reduces_to_the_w_pair(self):
        params = ModelParams(n=8, R=10.0)
        spec = InitialSpec.w_state()
        for tau in (0.0, 0.05, 0.4):
            full = sector_density_matrix(params, spec, tau)
            rho = partial_trace_oracle(full, (3, 7))
            direct = build_pair_rho(params, spec, PairClass.PAIR_W, tau)
            assert np.max(np.abs(rho - direct)) < 1e-12

    def test_rejects_bad_indices(self):
        full = sector_density_matrix(ModelParams(n=4, R=1.0), InitialSpec.w_state(), 0.5)
        for keep in ((1, 1), (0, 2), (1, 5)):
            with pytest.raises(ValueError):
                partial_trace_oracle(full, keep)


class TestSteadyGraph:
    def test_star_for_single_initial_excitation(self):
        graph = steady_graph(5, InitialSpec.two_qubit(s=-1.0))
        # hub 0 connects to everyone at 2(n-1)/n^2, every other pair sits
        # at the floor 2/n^2
        assert graph.shape == (5, 5)
        assert np.allclose(graph, graph.T)
        assert np.all(np.diag(graph) == 0.0)
        for j in range(1, 5):
            assert graph[0, j] == pytest.approx(0.32, abs=1e-12)
        for a in range(1, 5):
            for b in range(a + 1, 5):
                assert graph[a, b] == pytest.approx(0.08, abs=1e-12)

    def test_mirrored_star_for_s_plus_one(self):
        graph = steady_graph(5, InitialSpec.two_qubit(s=1.0))
        for j in [0] + list(range(2, 5)):
            assert graph[1, j] == pytest.approx(0.32, abs=1e-12)
        for a, b in ((0, 2), (0, 3), (2, 3), (3, 4)):
            assert graph[a, b] == pytest.approx(0.08, abs=1e-12)

    def test_bell_pair_graph_is_empty(self):
        graph = steady_graph(2, InitialSpec.two_qubit(s=0.0))
        assert np.all(graph == 0.0)

    def test_four_qubits_form_a_uniform_graph(self):
        graph = steady_graph(4, InitialSpec.two_qubit(s=0.0))
        off = graph[~np.eye(4, dtype=bool)]
        assert np.allclose(off, 0.25, atol=1e-12)

    def test_edges_match_stationary_concurrence(self):
        n = 7
        spec = InitialSpec.two_qubit(s=0.25, phi=0.8)
        graph = steady_graph(n, spec)
        assert graph[0, 1] == pytest.approx(
            stationary_concurrence(n, spec, PairClass.KL), abs=1e-14)
        assert graph[0, 3] == pytest.approx(
            stationary_concurrence(n, spec, PairClass.KJ), abs=1e-14)
        assert graph[4, 5] == pytest.approx(
            stationary_concurrence(n, spec, PairClass.JM), abs=1e-14)

    def test_rejects_w_state_family(self):
        with pytest.raises(ValueError):
            steady_graph(4, InitialSpec.w_state())


class TestCrossPairSymmetry:
    def test_other_tagged_qubit_bond_via_generic_route(self):
        # the bond between the second tagged qubit and a spectator follows
        # the same closed form with c2 in place of c1; verify through the
        # partial trace plus generic concurrence
        n = 6
        params = ModelParams(n=n, R=0.5)
        spec = InitialSpec.two_qubit(s=0.3, phi=1.7)
        state = evolve_amplitudes(params, spec, 2.5)
        full = sector_density_matrix(params, spec, 2.5)
        rho = partial_trace_oracle(full, (2, 5))
        expected = 2.0 / math.sqrt(n - 2) * abs(state.c2) * abs(state.c3)
        assert wootters_concurrence(rho) == pytest.approx(expected, abs=1e-12)
