"""Exact entanglement dynamics of n qubits in a common Lorentzian environment.

The package computes, in closed form, how pairwise entanglement evolves
when any number of qubits share a single leaky cavity: survival amplitudes
and their zeros, reduced two-qubit density matrices and Wootters
concurrence, sudden-death detection, measurement (Zeno) protection and the
stationary entanglement structure. Independent numerical oracles (a
memory-kernel RK4 solver, a discretized-continuum propagator, quadrature,
generic eigenvalue concurrence, a combinatorial partial trace) validate
every closed form; see :mod:`commonbath.verification`.
"""

from .model import (
    ModelParams,
    Regime,
    correlation_kernel,
    spectral_density,
    survival_amplitude,
    survival_probability,
    zero_crossings,
)
from .oracles import (
    BathDiscretization,
    BathResult,
    MemoryOdeResult,
    required_steps,
    solve_discretized_bath,
    solve_memory_ode,
)
from .states import (
    AmplitudeState,
    InitialKind,
    InitialSpec,
    evolve_amplitudes,
    initial_coefficients,
    w_state_survival,
)
from .entanglement import (
    ConcurrenceSeries,
    PairClass,
    SectorDensityMatrix,
    build_pair_rho,
    closed_form_concurrence,
    detect_esd,
    partial_trace_oracle,
    sector_density_matrix,
    stationary_concurrence,
    steady_graph,
    validate_density_matrix,
    wootters_concurrence,
)
from .zeno import (
    ZenoSchedule,
    effective_decay_rate,
    zeno_concurrence,
    zeno_survival,
)
from .runner import (
    ConfigError,
    RunConfig,
    VerificationFailure,
    run_mode,
    run_simulate,
    run_stationary,
    run_sweep,
    run_verify,
    run_zeno,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "Regime",
    "spectral_density",
    "correlation_kernel",
    "survival_amplitude",
    "survival_probability",
    "zero_crossings",
    "MemoryOdeResult",
    "required_steps",
    "solve_memory_ode",
    "BathDiscretization",
    "BathResult",
    "solve_discretized_bath",
    "InitialKind",
    "InitialSpec",
    "AmplitudeState",
    "initial_coefficients",
    "evolve_amplitudes",
    "w_state_survival",
    "PairClass",
    "wootters_concurrence",
    "build_pair_rho",
    "closed_form_concurrence",
    "stationary_concurrence",
    "ConcurrenceSeries",
    "detect_esd",
    "SectorDensityMatrix",
    "sector_density_matrix",
    "partial_trace_oracle",
    "steady_graph",
    "validate_density_matrix",
    "ZenoSchedule",
    "effective_decay_rate",
    "zeno_survival",
    "zeno_concurrence",
    "RunConfig",
    "ConfigError",
    "VerificationFailure",
    "run_mode",
    "run_simulate",
    "run_zeno",
    "run_stationary",
    "run_sweep",
    "run_verify",
    "__version__",
]
