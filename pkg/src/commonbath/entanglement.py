"""Reduced density matrices, concurrence, and the stationary structure.

Two-qubit matrices are written in the standard product basis ordered
{|11>, |10>, |01>, |00>}. Within the single-excitation sector every
reduced pair matrix is an X-type matrix with an empty doubly-excited
entry, so the Wootters concurrence collapses to twice the coherence
between |10> and |01>; those closed forms are the production path here,
while the generic eigenvalue construction is retained as an independent
oracle for them.

Pair classes distinguish what the two chosen qubits were doing at tau = 0:
both tagged (KL), one tagged one spectator (KJ), two spectators (JM), or
any pair of an initial W state (PAIR_W).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import ModelParams, survival_amplitude
from .states import (
    InitialKind,
    InitialSpec,
    evolve_amplitudes,
    initial_coefficients,
)

__all__ = [
    "PairClass",
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "PSD_EIGENVALUE_FLOOR",
    "ESD_THRESHOLD",
    "validate_density_matrix",
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
]

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIGENVALUE_FLOOR = -1e-10

# Concurrence below this counts as exactly zero when locating sudden-death
# intervals; the closed forms touch zero exactly, floats need a cutoff.
ESD_THRESHOLD = 1e-9

# Densest admissible sampling for sudden-death detection.
_MAX_SAMPLE_JUMP = 0.05

# sigma_y (x) sigma_y in the {|11>, |10>, |01>, |00>} ordering; real.
_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


class PairClass(Enum):
    PAIR_W = "pair_w"
    KL = "kl"
    KJ = "kj"
    JM = "jm"


def validate_density_matrix(rho: np.ndarray, label: str = "density matrix") -> None:
    """Raise unless rho is Hermitian, unit trace and positive semidefinite."""
    rho = np.asarray(rho)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > HERMITICITY_TOL:
        raise ValueError(f"{label} is not Hermitian: max deviation {herm:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"{label} trace is {tr}, not 1")
    eig_min = float(np.min(np.linalg.eigvalsh(rho)))
    if eig_min < PSD_EIGENVALUE_FLOOR:
        raise ValueError(f"{label} has negative eigenvalue {eig_min:.3e}")


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of a two-qubit density matrix.

    With l1 >= l2 >= l3 >= l4 the eigenvalues of rho (sy x sy) rho*
    (sy x sy), the concurrence is max(0, sqrt(l1) - sqrt(l2) - sqrt(l3)
    - sqrt(l4)). The square roots are evaluated as the singular values of
    B = sqrt(rho) (sy x sy) sqrt(rho)*, which carries the same spectrum
    (B B+ is similar to the product matrix): a direct eigensolve of the
    non-Hermitian product loses the degenerate roots to sqrt(rounding),
    about 1e-8, while singular values keep them at working precision.
    Eigenvalues of rho below -1e-10 raise; those in [-1e-10, 0) clamp
    to 0 before the root.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    validate_density_matrix(rho, label="two-qubit density matrix")
    lam, vec = np.linalg.eigh(rho)
    lam = lam.copy()
    lam[(lam < 0.0) & (lam >= PSD_EIGENVALUE_FLOOR)] = 0.0
    if np.any(lam < 0.0):
        raise FloatingPointError(
            f"density matrix eigenvalue {float(np.min(lam)):.3e} is below the floor"
        )
    sqrt_rho = (vec * np.sqrt(lam)) @ vec.conj().T
    flip_root = sqrt_rho @ _SIGMA_YY @ sqrt_rho.conj()
    sigma = np.linalg.svd(flip_root, compute_uv=False)  # descending
    value = sigma[0] - sigma[1] - sigma[2] - sigma[3]
    return float(min(1.0, max(0.0, value)))


def _require_compatible(spec: InitialSpec, pair: PairClass, n: int) -> None:
    if pair is PairClass.PAIR_W:
        if spec.kind is not InitialKind.W_STATE:
            raise ValueError("PAIR_W applies to the W-state family only")
    else:
        if spec.kind is not InitialKind.TWO_QUBIT_SUPERPOSITION:
            raise ValueError(f"{pair.name} applies to the two-qubit family only")
        if pair in (PairClass.KJ, PairClass.JM) and n <= 2:
            raise ValueError(f"{pair.name} needs a spectator qubit, so n > 2")


def _pair_rho_from_block(
    pop_10: float, pop_01: float, coherence: complex
) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = pop_10
    rho[2, 2] = pop_01
    rho[1, 2] = coherence
    rho[2, 1] = np.conj(coherence)
    rho[3, 3] = 1.0 - pop_10 - pop_01
    return rho


def build_pair_rho(
    params: ModelParams, spec: InitialSpec, pair: PairClass, tau: float
) -> np.ndarray:
    """Reduced density matrix of one qubit pair at scaled time tau.

    All classes produce an X-type matrix: populations on |10> and |01>,
    one coherence between them, the rest of the weight on |00>.
    """
    _require_compatible(spec, pair, params.n)
    n = params.n
    if pair is PairClass.PAIR_W:
        p = abs(survival_amplitude(params, tau)) ** 2 / n
        rho = _pair_rho_from_block(p, p, p)
    else:
        state = evolve_amplitudes(params, spec, tau)
        if pair is PairClass.KL:
            rho = _pair_rho_from_block(
                abs(state.c1) ** 2,
                abs(state.c2) ** 2,
                state.c1 * np.conj(state.c2),
            )
        elif pair is PairClass.KJ:
            spectator = abs(state.c3) ** 2 / (n - 2)
            rho = _pair_rho_from_block(
                abs(state.c1) ** 2,
                spectator,
                state.c1 * np.conj(state.c3) / math.sqrt(n - 2),
            )
        else:  # JM
            q = abs(state.c3) ** 2 / (n - 2)
            rho = _pair_rho_from_block(q, q, q)
    validate_density_matrix(rho, label=f"{pair.name} pair matrix")
    return rho


def closed_form_concurrence(
    params: ModelParams, spec: InitialSpec, pair: PairClass, tau: float
) -> float:
    """Concurrence of the pair matrix evaluated through its closed form."""
    _require_compatible(spec, pair, params.n)
    n = params.n
    if pair is PairClass.PAIR_W:
        return min(1.0, 2.0 * abs(survival_amplitude(params, tau)) ** 2 / n)
    state = evolve_amplitudes(params, spec, tau)
    return _amplitude_concurrence(state.c1, state.c2, state.c3, n, pair)


def _amplitude_concurrence(
    c1: complex, c2: complex, c3: complex, n: int, pair: PairClass
) -> float:
    if pair is PairClass.KL:
        value = 2.0 * abs(c1) * abs(c2)
    elif pair is PairClass.KJ:
        value = 2.0 / math.sqrt(n - 2) * abs(c1) * abs(c3)
    elif pair is PairClass.JM:
        value = 2.0 / (n - 2) * abs(c3) ** 2
    else:
        raise ValueError(f"no amplitude form for {pair}")
    return min(1.0, value)  # rounding can overshoot the unit ceiling by an ulp


def _limit_amplitudes(n: int, spec: InitialSpec) -> tuple[complex, complex, complex]:
    """Amplitudes in the tau -> infinity limit, where the bright part is gone."""
    c01, c02 = initial_coefficients(spec)
    c1 = ((n - 1) * c01 - c02) / n
    c2 = ((n - 1) * c02 - c01) / n
    c3 = -math.sqrt(n - 2) * (c01 + c02) / n
    return c1, c2, c3


def stationary_concurrence(n: int, spec: InitialSpec, pair: PairClass) -> float:
    """Exact tau -> infinity concurrence for one pair class.

    The W-state family retains no stationary entanglement, so PAIR_W is 0.
    For the two-qubit family the limit follows from the amplitudes with
    the decaying part removed; for s = 0 (phi = 0) this reduces to
    (n-2)^2/n^2, 2(n-2)/n^2 and 4/n^2 for KL, KJ and JM, and for s = -1 to
    2(n-1)/n^2 and 2/n^2 for KJ and JM.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    _require_compatible(spec, pair, n)
    if pair is PairClass.PAIR_W:
        return 0.0
    c1, c2, c3 = _limit_amplitudes(n, spec)
    return _amplitude_concurrence(c1, c2, c3, n, pair)


# ---------------------------------------------------------------------------
# sudden-death detection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcurrenceSeries:
    """Ordered (tau, concurrence) samples for one pair class."""

    taus: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if taus.ndim != 1 or taus.shape != values.shape or taus.size < 2:
            raise ValueError("need matching 1-d tau and value arrays, length >= 2")
        if np.any(np.diff(taus) <= 0.0):
            raise ValueError("taus must be strictly increasing")
        if not (np.all(np.isfinite(taus)) and np.all(np.isfinite(values))):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "values", values)


def detect_esd(series: ConcurrenceSeries) -> list[tuple[float, float | None]]:
    """Locate sudden-death intervals in a concurrence series.

    Returns (death_time, revival_time) pairs, revival_time None when the
    series ends dead. A death needs a live sample (concurrence at or above
    1e-9) before the dead run; crossing times are placed by linear
    interpolation of the threshold between the straddling samples.

    Refuses series whose concurrence moves by 0.05 or more between
    neighbouring samples, since dips can then slip between samples.
    """
    taus, c = series.taus, series.values
    jump = float(np.max(np.abs(np.diff(c)), initial=0.0))
    if jump >= _MAX_SAMPLE_JUMP:
        raise ValueError(
            f"series is undersampled: neighbouring samples jump by {jump:.3f} "
            f"(need < {_MAX_SAMPLE_JUMP})"
        )
    dead = c < ESD_THRESHOLD
    events: list[tuple[float, float | None]] = []
    i = 0
    size = len(c)
    while i < size:
        if not dead[i]:
            i += 1
            continue
        start = i
        while i < size and dead[i]:
            i += 1
        stop = i - 1
        if start == 0:
            continue  # series begins dead; nothing died
        prev_c, curr_c = c[start - 1], c[start]
        frac = (prev_c - ESD_THRESHOLD) / (prev_c - curr_c)
        death = taus[start - 1] + frac * (taus[start] - taus[start - 1])
        revival: float | None = None
        if stop + 1 < size:
            next_c = c[stop + 1]
            frac = (ESD_THRESHOLD - c[stop]) / (next_c - c[stop])
            revival = taus[stop] + frac * (taus[stop + 1] - taus[stop])
        events.append((float(death), None if revival is None else float(revival)))
    return events


# ---------------------------------------------------------------------------
# full-sector matrix and the partial-trace oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectorDensityMatrix:
    """Qubit-register density matrix restricted to <= 1 excitation.

    Basis order: the all-ground state |G>, then |1_1> ... |1_n>. After the
    photon modes are traced out no coherence survives between |G> and the
    excited states, so the matrix is the pure single-excitation block plus
    a ground weight at [0, 0].
    """

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.n + 1, self.n + 1):
            raise ValueError(
                f"matrix must be ({self.n + 1}, {self.n + 1}), got {mat.shape}"
            )
        validate_density_matrix(mat, label="sector density matrix")
        object.__setattr__(self, "matrix", mat)

    @property
    def ground_weight(self) -> float:
        return float(self.matrix[0, 0].real)


def sector_density_matrix(
    params: ModelParams, spec: InitialSpec, tau: float
) -> SectorDensityMatrix:
    """Full-register density matrix at scaled time tau, either family."""
    n = params.n
    amps = np.zeros(n, dtype=complex)
    if spec.kind is InitialKind.W_STATE:
        amps[:] = survival_amplitude(params, tau) / math.sqrt(n)
    else:
        state = evolve_amplitudes(params, spec, tau)
        amps[0] = state.c1
        amps[1] = state.c2
        if n > 2:
            amps[2:] = state.c3 / math.sqrt(n - 2)
    mat = np.zeros((n + 1, n + 1), dtype=complex)
    mat[1:, 1:] = np.outer(amps, amps.conj())
    mat[0, 0] = 1.0 - float(np.sum(np.abs(amps) ** 2))
    return SectorDensityMatrix(n=n, matrix=mat)


def partial_trace_oracle(
    full: SectorDensityMatrix, keep: tuple[int, int]
) -> np.ndarray:
    """Trace a sector matrix down to two qubits, combinatorially.

    Every sector basis state maps to an occupation bitstring (|G> to all
    zeros, |1_i> to a one at qubit i); an entry (a, b) survives the trace
    exactly when the bitstrings agree outside the kept pair, and lands at
    the element indexed by the kept-pair occupations. Qubit labels are
    1-based. Independent of the closed-form pair matrices, which it must
    reproduce entrywise.
    """
    p, q = keep
    n = full.n
    if p == q or not (1 <= p <= n) or not (1 <= q <= n):
        raise ValueError(f"keep must be two distinct labels in 1..{n}, got {keep}")

    def occupation(state: int, qubit: int) -> int:
        return 1 if state == qubit else 0

    def spectator_pattern(state: int) -> int:
        # label of the excited qubit outside the kept pair, 0 if none
        return state if state not in (0, p, q) else 0

    rho = np.zeros((4, 4), dtype=complex)
    for a in range(n + 1):
        for b in range(n + 1):
            if spectator_pattern(a) != spectator_pattern(b):
                continue
            row = 3 - 2 * occupation(a, p) - occupation(a, q)
            col = 3 - 2 * occupation(b, p) - occupation(b, q)
            rho[row, col] += full.matrix[a, b]
    validate_density_matrix(rho, label="partial-trace result")
    return rho


# ---------------------------------------------------------------------------
# stationary correlation graph
# ---------------------------------------------------------------------------

def steady_graph(n: int, spec: InitialSpec) -> np.ndarray:
    """Stationary pairwise-concurrence weights as a symmetric n x n matrix.

    Vertices 0 and 1 are the tagged qubits, the rest are spectators. For
    s = 0 the tagged pair keeps a strong bond and couples uniformly to the
    spectators (a bipartite-plus-edge pattern); for s = +-1 the weights
    collapse onto a star around the single initially excited qubit, with
    all remaining pairs at the uniform floor 2/n^2.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if spec.kind is not InitialKind.TWO_QUBIT_SUPERPOSITION:
        raise ValueError("the stationary graph is defined for the two-qubit family")
    weights = np.zeros((n, n))
    c1, c2, c3 = _limit_amplitudes(n, spec)
    weights[0, 1] = weights[1, 0] = 2.0 * abs(c1) * abs(c2)
    if n > 2:
        root = math.sqrt(n - 2)
        k_spoke = 2.0 / root * abs(c1) * abs(c3)
        l_spoke = 2.0 / root * abs(c2) * abs(c3)
        floor = 2.0 / (n - 2) * abs(c3) ** 2
        weights[0, 2:] = weights[2:, 0] = k_spoke
        weights[1, 2:] = weights[2:, 1] = l_spoke
        for j in range(2, n):
            weights[j, j + 1:] = floor
            weights[j + 1:, j] = floor
    return weights
