import cmath
import math

import numpy as np
import pytest

from commonbath import (
    InitialKind,
    InitialSpec,
    ModelParams,
    evolve_amplitudes,
    initial_coefficients,
    survival_amplitude,
    w_state_survival,
    zero_crossings,
)


class TestInitialSpec:
    def test_rejects_out_of_range_parameters(self):
        with pytest.raises(ValueError):
            InitialSpec.two_qubit(s=1.5)
        with pytest.raises(ValueError):
            InitialSpec.two_qubit(s=-1.0001)
        with pytest.raises(ValueError):
            InitialSpec.two_qubit(s=0.0, phi=7.0)
        with pytest.raises(ValueError):
            InitialSpec(kind=InitialKind.TWO_QUBIT_SUPERPOSITION, k_index=2, l_index=2)

    def test_w_state_convenience(self):
        assert InitialSpec.w_state().kind is InitialKind.W_STATE


class TestInitialCoefficients:
    def test_maximally_entangled_point(self):
        c01, c02 = initial_coefficients(InitialSpec.two_qubit(s=0.0, phi=0.0))
        assert c01 == pytest.approx(0.70711, abs=1e-5)
        assert c02 == pytest.approx(0.70711, abs=1e-5)

    def test_single_excitation_points(self):
        c01, c02 = initial_coefficients(InitialSpec.two_qubit(s=-1.0))
        assert (c01, c02) == (1.0, 0.0)
        c01, c02 = initial_coefficients(InitialSpec.two_qubit(s=1.0, phi=math.pi))
        assert c01 == 0.0
        assert c02 == pytest.approx(-1.0, abs=1e-12)

    @pytest.mark.parametrize("s", np.linspace(-1.0, 1.0, 11))
    @pytest.mark.parametrize("phi", [0.0, 1.0, math.pi, 5.5])
    def test_always_normalized(self, s, phi):
        c01, c02 = initial_coefficients(InitialSpec.two_qubit(s=float(s), phi=phi))
        assert abs(c01) ** 2 + abs(c02) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_rejects_w_state_family(self):
        with pytest.raises(ValueError):
            initial_coefficients(InitialSpec.w_state())


class TestEvolveAmplitudes:
    def test_initial_triple(self):
        params = ModelParams(n=6, R=0.3)
        spec = InitialSpec.two_qubit(s=0.4, phi=1.1)
        c01, c02 = initial_coefficients(spec)
        state = evolve_amplitudes(params, spec, 0.0)
        assert state.c1 == pytest.approx(c01, abs=1e-14)
        assert state.c2 == pytest.approx(c02, abs=1e-14)
        assert state.c3 == 0.0

    def test_single_excitation_row(self):
        # with the excitation on the first tagged qubit, the other tagged
        # amplitude is (survival - 1)/n at every time
        params = ModelParams(n=5, R=0.8)
        spec = InitialSpec.two_qubit(s=-1.0)
        for tau in (0.0, 0.4, 2.0, 9.0):
            state = evolve_amplitudes(params, spec, tau)
            e = survival_amplitude(params, tau)
            assert state.c2 == pytest.approx((-1.0 + e) / 5.0, abs=1e-14)

    def test_no_spectators_for_two_qubits(self):
        params = ModelParams(n=2, R=3.0)
        spec = InitialSpec.two_qubit(s=0.2, phi=0.7)
        for tau in np.linspace(0.0, 8.0, 17):
            assert evolve_amplitudes(params, spec, float(tau)).c3 == 0.0

    def test_exchange_symmetry(self):
        # swapping the tagged amplitudes is s -> -s, phi -> -phi up to a
        # global phase exp(-i phi), so c1 and c2 swap up to that phase
        params = ModelParams(n=7, R=2.0)
        s, phi = 0.6, 1.3
        spec = InitialSpec.two_qubit(s=s, phi=phi)
        swapped = InitialSpec.two_qubit(s=-s, phi=2.0 * math.pi - phi)
        for tau in (0.0, 0.5, 3.3):
            a = evolve_amplitudes(params, spec, tau)
            b = evolve_amplitudes(params, swapped, tau)
            phase = cmath.exp(-1j * phi)
            assert b.c1 == pytest.approx(phase * a.c2, abs=1e-12)
            assert b.c2 == pytest.approx(phase * a.c1, abs=1e-12)
            assert b.c3 == pytest.approx(phase * a.c3, abs=1e-12)

    def test_decoherence_free_component_is_constant(self):
        params = ModelParams(n=6, R=5.0)
        spec = InitialSpec.two_qubit(s=0.3, phi=0.9)
        c01, c02 = initial_coefficients(spec)
        shared = (c01 + c02) / 6.0
        frozen = None
        for tau in np.linspace(0.0, 20.0, 41):
            state = evolve_amplitudes(params, spec, float(tau))
            value = state.c1 - shared * state.e_amp
            if frozen is None:
                frozen = value
            assert value == pytest.approx(frozen, abs=1e-12)

    def test_photon_leakage_monotone_in_weak_coupling(self):
        params = ModelParams(n=4, R=0.2)
        spec = InitialSpec.two_qubit(s=0.5, phi=2.0)
        taus = np.linspace(0.0, 40.0, 200)
        leak = [
            1.0 - evolve_amplitudes(params, spec, float(t)).excitation_probability
            for t in taus
        ]
        assert leak[0] == pytest.approx(0.0, abs=1e-14)
        assert np.all(np.diff(leak) >= -1e-13)
        assert np.all((np.asarray(leak) >= -1e-13) & (np.asarray(leak) <= 1.0))

    def test_photon_leakage_bounded_in_strong_coupling(self):
        params = ModelParams(n=4, R=10.0)
        spec = InitialSpec.two_qubit(s=0.0)
        for tau in np.linspace(0.0, 10.0, 101):
            leak = 1.0 - evolve_amplitudes(params, spec, float(tau)).excitation_probability
            assert -1e-12 <= leak <= 1.0

    def test_long_time_limit_at_the_critical_point(self):
        # at n = 4, R = 1/4 the survival is exp(-tau/2)(1 + tau/2); by
        # tau = 50 it is below 4e-10, so the amplitudes sit at their
        # stationary values q/2, q/2, -1/2 with q = 1/sqrt(2)
        params = ModelParams(n=4, R=0.25)
        state = evolve_amplitudes(params, InitialSpec.two_qubit(s=0.0), 50.0)
        q = 1.0 / math.sqrt(2.0)
        assert state.c1 == pytest.approx(q / 2.0, abs=1e-6)
        assert state.c2 == pytest.approx(q / 2.0, abs=1e-6)
        assert state.c3 == pytest.approx(-0.5, abs=1e-6)

    def test_rejects_w_state_family(self):
        with pytest.raises(ValueError):
            evolve_amplitudes(ModelParams(n=4, R=0.1), InitialSpec.w_state(), 1.0)

    def test_rejects_labels_beyond_the_register(self):
        spec = InitialSpec(kind=InitialKind.TWO_QUBIT_SUPERPOSITION,
                           k_index=1, l_index=5)
        with pytest.raises(ValueError, match="labels"):
            evolve_amplitudes(ModelParams(n=4, R=0.1), spec, 1.0)


class TestWStateSurvival:
    def test_delegates_to_the_closed_form(self):
        params = ModelParams(n=6, R=0.4)
        for tau in (0.0, 0.7, 5.0, 22.0):
            assert w_state_survival(params, tau) == survival_amplitude(params, tau)

    def test_vanishes_at_the_first_crossing(self):
        params = ModelParams(n=2, R=10.0)
        t1 = zero_crossings(params, 1)[0]
        assert abs(w_state_survival(params, t1)) < 1e-10

    def test_weak_coupling_tail(self):
        # late-time decay at the slow-pole rate
        params = ModelParams(n=12, R=0.1)
        gamma = (1.0 - math.sqrt(1.0 - 4.0 * 12 * 0.01)) / 2.0
        ratio = abs(w_state_survival(params, 30.0) / w_state_survival(params, 20.0))
        assert ratio == pytest.approx(math.exp(-10.0 * gamma), rel=1e-6)
