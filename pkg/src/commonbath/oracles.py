"""Two independent numerical routes to the survival amplitude.

Both solvers reproduce the bright-state amplitude without touching the
closed form in :mod:`commonbath.model`, so they can serve as ground truth
for it.

1. The memory-kernel equation dE/dtau = -integral f(tau - u) E(u) du has an
   exponential kernel at resonance, so it is exactly equivalent to the
   linear pair E' = -n R^2 y, y' = E - y with y the running memory
   integral. That pair is integrated with classical fixed-step RK4.

2. The Lorentzian continuum is discretized on a uniform frequency grid and
   the (1 + n_modes)-dimensional single-excitation Schroedinger problem
   (bright state + modes) is propagated exactly through its spectral
   decomposition, which keeps the evolution unitary to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .model import ModelParams

__all__ = [
    "MemoryOdeResult",
    "required_steps",
    "solve_memory_ode",
    "BathDiscretization",
    "BathResult",
    "solve_discretized_bath",
    "MIN_CAPTURED_MASS",
]

# Smallest fraction of the Lorentzian line that the discretization window
# must capture before a solve is attempted. A window of +-40 linewidths
# holds 98.4% of the line; windows much narrower than that leave the
# solver systematically biased.
MIN_CAPTURED_MASS = 0.95


# ---------------------------------------------------------------------------
# memory-kernel ODE reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MemoryOdeResult:
    """RK4 trajectory: amplitudes e_amp and memory integrals y_aux on taus."""

    taus: np.ndarray
    e_amp: np.ndarray
    y_aux: np.ndarray


def required_steps(params: ModelParams, tau_max: float) -> int:
    """Minimum RK4 step count that resolves the fastest oscillation."""
    return math.ceil(10.0 * tau_max * max(1.0, 2.0 * math.sqrt(params.n) * params.R))


def solve_memory_ode(params: ModelParams, tau_max: float, steps: int) -> MemoryOdeResult:
    """Integrate the memory-kernel dynamics with classical RK4.

    Starts from E(0) = 1, y(0) = 0 and takes `steps` fixed steps to
    tau_max. Refuses step counts below :func:`required_steps`.
    """
    if tau_max <= 0.0:
        raise ValueError(f"tau_max must be > 0, got {tau_max}")
    need = required_steps(params, tau_max)
    if steps < need:
        raise ValueError(
            f"steps = {steps} is too coarse for n = {params.n}, R = {params.R}, "
            f"tau_max = {tau_max}; need at least {need}"
        )
    dt = tau_max / steps
    rate = params.n * params.R * params.R
    e = 1.0 + 0.0j
    y = 0.0 + 0.0j
    e_amp = np.empty(steps + 1, dtype=complex)
    y_aux = np.empty(steps + 1, dtype=complex)
    e_amp[0] = e
    y_aux[0] = y
    for i in range(steps):
        k1e = -rate * y
        k1y = e - y
        e2 = e + 0.5 * dt * k1e
        y2 = y + 0.5 * dt * k1y
        k2e = -rate * y2
        k2y = e2 - y2
        e3 = e + 0.5 * dt * k2e
        y3 = y + 0.5 * dt * k2y
        k3e = -rate * y3
        k3y = e3 - y3
        e4 = e + dt * k3e
        y4 = y + dt * k3y
        k4e = -rate * y4
        k4y = e4 - y4
        e = e + dt * (k1e + 2.0 * k2e + 2.0 * k3e + k4e) / 6.0
        y = y + dt * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        e_amp[i + 1] = e
        y_aux[i + 1] = y
    taus = np.linspace(0.0, tau_max, steps + 1)
    return MemoryOdeResult(taus=taus, e_amp=e_amp, y_aux=y_aux)


# ---------------------------------------------------------------------------
# discretized-continuum Schroedinger oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BathDiscretization:
    """Uniform midpoint discretization of the Lorentzian continuum.

    Mode m sits at offset omega_min + (m + 1/2) d with d the grid spacing,
    and couples to the collective bright state with amplitude weights[m]
    (kappa units). Build instances with :meth:`from_lorentzian`; direct
    construction skips the physics checks so synthetic baths (for example
    all-zero couplings) remain possible.
    """

    n_modes: int
    omega_min: float
    omega_max: float
    weights: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        if not (self.omega_max > self.omega_min):
            raise ValueError("omega_max must exceed omega_min")
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.n_modes,):
            raise ValueError(
                f"weights must have shape ({self.n_modes},), got {w.shape}"
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "weights", w)

    @property
    def spacing(self) -> float:
        return (self.omega_max - self.omega_min) / self.n_modes

    def mode_offsets(self) -> np.ndarray:
        """Midpoint frequencies relative to resonance, kappa units."""
        return self.omega_min + (np.arange(self.n_modes) + 0.5) * self.spacing

    def captured_mass(self) -> float:
        """Fraction of the Lorentzian line inside the window."""
        return (math.atan(self.omega_max) - math.atan(self.omega_min)) / math.pi

    @classmethod
    def from_lorentzian(
        cls,
        params: ModelParams,
        n_modes: int = 2000,
        half_width: float = 40.0,
    ) -> "BathDiscretization":
        """Sample the Lorentzian line on a symmetric window +-half_width.

        The per-mode coupling lumps the collective strength sqrt(n) g and
        the local density: weights^2 sums to the in-window portion of the
        line (checked to 1e-3 relative against the analytic value).
        """
        if n_modes < 200:
            raise ValueError(
                f"n_modes = {n_modes} is below the supported minimum of 200"
            )
        if not (half_width > 0.0) or not math.isfinite(half_width):
            raise ValueError(f"half_width must be finite and > 0, got {half_width}")
        spacing = 2.0 * half_width / n_modes
        offsets = -half_width + (np.arange(n_modes) + 0.5) * spacing
        weights = (
            math.sqrt(params.n)
            * params.R
            * np.sqrt(spacing / np.pi)
            / np.sqrt(offsets * offsets + 1.0)
        )
        bath = cls(
            n_modes=n_modes,
            omega_min=-half_width,
            omega_max=half_width,
            weights=weights,
        )
        target = params.n * params.R * params.R * bath.captured_mass()
        got = float(np.sum(weights * weights))
        if abs(got - target) > 1e-3 * target:
            raise FloatingPointError(
                "midpoint weights do not reproduce the in-window line mass: "
                f"{got:.6e} vs {target:.6e}"
            )
        return bath


@dataclass(frozen=True)
class BathResult:
    """Sampled bright-state amplitude and total excitation norm."""

    taus: np.ndarray
    e_amp: np.ndarray
    norm: np.ndarray


def solve_discretized_bath(
    params: ModelParams,
    bath: BathDiscretization,
    tau_max: float,
    steps: int,
) -> BathResult:
    """Propagate the bright state through the discretized continuum.

    The single-excitation Hamiltonian (bright state coupled to every mode)
    is diagonalized once; sampled amplitudes then follow from the exact
    spectral propagator, so the evolution is unitary to rounding and the
    only model error is the discretization itself.

    Parameters
    ----------
    params : ModelParams
        Kept for interface symmetry with the closed form; the physics of
        the solve is carried entirely by `bath` (use
        :meth:`BathDiscretization.from_lorentzian` with the same params).
    bath : BathDiscretization
    tau_max : float
    steps : int
        Number of sample intervals; the result holds steps + 1 samples.
    """
    if tau_max <= 0.0:
        raise ValueError(f"tau_max must be > 0, got {tau_max}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    mass = bath.captured_mass()
    if mass < MIN_CAPTURED_MASS:
        raise ValueError(
            f"window [{bath.omega_min}, {bath.omega_max}] captures only "
            f"{mass:.4f} of the Lorentzian line (need >= {MIN_CAPTURED_MASS}); "
            "widen the window"
        )
    m = bath.n_modes
    ham = np.zeros((m + 1, m + 1))
    ham[0, 1:] = bath.weights
    ham[1:, 0] = bath.weights
    idx = np.arange(1, m + 1)
    ham[idx, idx] = bath.mode_offsets()
    evals, evecs = eigh(ham, driver="evd")
    bright = evecs[0, :]  # overlaps of eigenvectors with the bright state

    taus = np.linspace(0.0, tau_max, steps + 1)
    phases = np.exp(-1j * np.outer(evals, taus)) * bright[:, None]
    amps = evecs @ phases  # site-basis amplitudes, shape (m+1, steps+1)
    e_amp = amps[0, :].copy()
    norm = np.sum(np.abs(amps) ** 2, axis=0)
    return BathResult(taus=taus, e_amp=e_amp, norm=norm)
