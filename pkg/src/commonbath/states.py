"""Initial states and their single-excitation amplitudes.

Two families of initial conditions are supported:

* the symmetric W state, whose whole dynamics is the scalar survival
  amplitude of the bright state, and
* one excitation shared between two tagged qubits, parametrized by a
  separability parameter s in [-1, 1] and a relative phase phi. s = 0
  with phi = 0 is the maximally entangled pair, s = +-1 puts the
  excitation on a single qubit.

For the two-qubit family the state at any time is carried by three
amplitudes: c1 and c2 on the tagged qubits and c3 on the normalized
symmetric superposition over the remaining n - 2 qubits. Each is an affine
function of the survival amplitude, so a decoherence-free component
survives as tau -> infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .model import ModelParams, survival_amplitude

__all__ = [
    "InitialKind",
    "InitialSpec",
    "AmplitudeState",
    "initial_coefficients",
    "evolve_amplitudes",
    "w_state_survival",
]

_NORM_TOL = 1e-12
_TWO_PI = 2.0 * math.pi


class InitialKind(Enum):
    W_STATE = "w_state"
    TWO_QUBIT_SUPERPOSITION = "two_qubit"


@dataclass(frozen=True)
class InitialSpec:
    """Which initial state to evolve.

    The tagged qubit labels are 1-based. The Hamiltonian is permutation
    symmetric, so only the pair class of two qubits matters; internally
    the tagged pair is canonicalized to positions (1, 2).
    """

    kind: InitialKind
    s: float = 0.0
    phi: float = 0.0
    k_index: int = 1
    l_index: int = 2

    def __post_init__(self):
        if not isinstance(self.kind, InitialKind):
            raise ValueError(f"kind must be an InitialKind, got {self.kind!r}")
        if not -1.0 <= self.s <= 1.0:
            raise ValueError(f"s must lie in [-1, 1], got {self.s}")
        if not 0.0 <= self.phi < _TWO_PI:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")
        if self.k_index < 1 or self.l_index < 1 or self.k_index == self.l_index:
            raise ValueError(
                f"qubit labels must be distinct and >= 1, got "
                f"({self.k_index}, {self.l_index})"
            )

    @classmethod
    def w_state(cls) -> "InitialSpec":
        return cls(kind=InitialKind.W_STATE)

    @classmethod
    def two_qubit(cls, s: float = 0.0, phi: float = 0.0) -> "InitialSpec":
        return cls(kind=InitialKind.TWO_QUBIT_SUPERPOSITION, s=s, phi=phi)


@dataclass(frozen=True)
class AmplitudeState:
    """Single-excitation amplitudes of the two-qubit family at time tau.

    The probability deficit 1 - (|c1|^2 + |c2|^2 + |c3|^2) is the emitted
    photon weight. e_amp records the survival amplitude the state was
    built from.
    """

    c1: complex
    c2: complex
    c3: complex
    e_amp: complex
    tau: float

    @property
    def excitation_probability(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2 + abs(self.c3) ** 2


def initial_coefficients(spec: InitialSpec) -> tuple[complex, complex]:
    """Amplitudes (c01, c02) on the tagged qubits at tau = 0.

    c01 = sqrt((1-s)/2) and c02 = sqrt((1+s)/2) e^{i phi}; unit norm by
    construction.
    """
    if spec.kind is not InitialKind.TWO_QUBIT_SUPERPOSITION:
        raise ValueError("initial coefficients are defined for the two-qubit family")
    c01 = complex(math.sqrt(0.5 * (1.0 - spec.s)))
    c02 = math.sqrt(0.5 * (1.0 + spec.s)) * cmath.exp(1j * spec.phi)
    if abs(abs(c01) ** 2 + abs(c02) ** 2 - 1.0) > _NORM_TOL:
        raise FloatingPointError("initial coefficients lost normalization")
    return c01, c02


def evolve_amplitudes(params: ModelParams, spec: InitialSpec, tau: float) -> AmplitudeState:
    """Amplitudes of the two-qubit family at scaled time tau.

    c1 and c2 carry a time-independent part plus (c01 + c02)/n times the
    survival amplitude; c3 grows out of nothing as the bright component
    decays. For n = 2 there are no spectator qubits and c3 is identically
    zero.
    """
    c01, c02 = initial_coefficients(spec)
    n = params.n
    if spec.k_index > n or spec.l_index > n:
        raise ValueError(
            f"tagged qubit labels ({spec.k_index}, {spec.l_index}) must lie in 1..{n}"
        )
    e = survival_amplitude(params, tau)
    shared = (c01 + c02) / n
    c1 = ((n - 1) * c01 - c02) / n + shared * e
    c2 = ((n - 1) * c02 - c01) / n + shared * e
    c3 = math.sqrt(n - 2) * shared * (e - 1.0)
    state = AmplitudeState(c1=c1, c2=c2, c3=c3, e_amp=e, tau=float(tau))
    if state.excitation_probability > 1.0 + _NORM_TOL:
        raise FloatingPointError(
            f"excitation probability exceeds 1: {state.excitation_probability}"
        )
    return state


def w_state_survival(params: ModelParams, tau) -> complex:
    """Survival amplitude of the W state (delegates to the closed form).

    The W-state reduced dynamics depends on the environment through this
    single scalar, so the wrapper exists mainly to make call sites say
    what they mean.
    """
    return survival_amplitude(params, tau)
