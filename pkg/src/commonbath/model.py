"""Closed-form dynamics of n qubits coupled to a common leaky cavity mode.

The qubits all sit in one cavity whose photon leaks into a flat continuum,
so the environment they actually see is a Lorentzian continuum of width
kappa centred on the cavity frequency. Everything in this package works in
scaled units: times are tau = kappa*t, rates are in units of kappa, and the
single coupling knob is the dimensionless ratio R = g/kappa. The qubits are
exactly resonant with the cavity.

Within the single-excitation sector the collective bright state (the
symmetric superposition of one excitation) decouples from the dark states
and its survival amplitude is known in closed form. The weak and strong
coupling regimes are separated by R^2 = 1/(4 n); in the strong regime the
amplitude oscillates and touches zero on an arithmetic sequence of times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Regime",
    "ModelParams",
    "spectral_density",
    "correlation_kernel",
    "survival_amplitude",
    "survival_probability",
    "zero_crossings",
]

# Tolerance band around R^2 = 1/(4n) inside which the regime is reported
# as CRITICAL (below double-precision noise for every quantity involved).
REGIME_BOUNDARY_TOL = 1e-12

# Internal consistency guards on the closed-form amplitude.
_IMAG_TOL = 1e-12
_MODULUS_TOL = 1e-12

# Every time from zero_crossings must be a zero of the amplitude to this.
ZERO_CROSSING_TOL = 1e-10


class Regime(Enum):
    """Coupling regime relative to the oscillation threshold R^2 = 1/(4n)."""

    WEAK = "weak"
    STRONG = "strong"
    CRITICAL = "critical"


@dataclass(frozen=True)
class ModelParams:
    """Model parameters in cavity-linewidth units.

    Attributes
    ----------
    n : int
        Number of qubits, at least 2.
    R : float
        Qubit-cavity coupling over cavity linewidth, g/kappa, positive.
    detuning : float
        Qubit-cavity detuning in kappa units. Only exact resonance is
        supported; the field exists so the restriction is explicit.
    """

    n: int
    R: float
    detuning: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not math.isfinite(self.R) or self.R <= 0.0:
            raise ValueError(f"R must be finite and > 0, got {self.R}")
        if self.detuning != 0.0:
            raise ValueError("only the resonant model (detuning = 0) is supported")

    @property
    def regime(self) -> Regime:
        gap = self.R * self.R - 1.0 / (4.0 * self.n)
        if abs(gap) < REGIME_BOUNDARY_TOL:
            return Regime.CRITICAL
        return Regime.STRONG if gap > 0.0 else Regime.WEAK

    @property
    def rate_gap(self) -> complex:
        """Square root of 1 - 4 n R^2 as a complex number (kappa units).

        Real in the weak regime, imaginary in the strong one; the closed
        form below is evaluated with this complex value so both branches
        come out of a single expression.
        """
        return complex(np.sqrt(complex(1.0 - 4.0 * self.n * self.R * self.R)))

    @property
    def oscillation_rate(self) -> float:
        """sqrt(4 n R^2 - 1), the strong-coupling oscillation rate."""
        if self.regime is not Regime.STRONG:
            raise ValueError("oscillation rate is defined in the strong regime only")
        return math.sqrt(4.0 * self.n * self.R * self.R - 1.0)


def spectral_density(params: ModelParams, omega) -> float:
    """Lorentzian coupling density at offset omega from resonance.

    J(omega) = (1/pi) n R^2 / (omega^2 + 1) in kappa units; even in omega
    and normalized to n R^2 over the whole line. Accepts scalars or arrays.
    """
    omega = np.asarray(omega, dtype=float)
    dens = (params.n * params.R * params.R / np.pi) / (omega * omega + 1.0)
    return float(dens) if dens.ndim == 0 else dens


def correlation_kernel(params: ModelParams, dt: float) -> complex:
    """Environment memory kernel at non-negative time separation dt.

    Fourier transform of the Lorentzian density over the resonant phase:
    n R^2 exp(-dt), real at exact resonance.
    """
    if dt < 0.0:
        raise ValueError(f"dt must be >= 0, got {dt}")
    return complex(params.n * params.R * params.R * math.exp(-dt))


def _sinhc(z: np.ndarray) -> np.ndarray:
    """sinh(z)/z, with a series fallback so z = 0 is exact."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-4
    zs = z[small]
    out[small] = 1.0 + zs * zs / 6.0 + zs ** 4 / 120.0
    zb = z[~small]
    out[~small] = np.sinh(zb) / zb
    return out


def survival_amplitude(params: ModelParams, tau) -> complex | np.ndarray:
    """Bright-state survival amplitude at scaled time tau >= 0.

    Closed form: exp(-tau/2) * (cosh(w tau/2) + sinh(w tau/2)/w) with
    w = sqrt(1 - 4 n R^2) taken complex, so the oscillatory branch and the
    degenerate point w = 0 (where the limit is exp(-tau/2)(1 + tau/2)) are
    handled by the same expression. The result is real for real inputs;
    a residual imaginary part above 1e-12 raises instead of being dropped.

    Parameters
    ----------
    params : ModelParams
    tau : float or array_like
        Scaled time(s), non-negative.

    Returns
    -------
    complex or ndarray of complex
        Amplitude with |value| <= 1, matching the shape of tau.
    """
    scalar = np.isscalar(tau)
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0.0):
        raise ValueError("tau must be >= 0")
    half = 0.5 * tau
    z = params.rate_gap * half
    amp = np.exp(-half) * (np.cosh(z) + half * _sinhc(z))
    if np.max(np.abs(amp.imag), initial=0.0) > _IMAG_TOL:
        raise FloatingPointError(
            "survival amplitude has a non-negligible imaginary part; "
            f"max |imag| = {np.max(np.abs(amp.imag)):.3e}"
        )
    if np.max(np.abs(amp), initial=0.0) > 1.0 + _MODULUS_TOL:
        raise FloatingPointError(
            f"survival amplitude exceeds unit modulus: {np.max(np.abs(amp)):.15f}"
        )
    return complex(amp) if scalar else amp


def survival_probability(params: ModelParams, tau) -> float | np.ndarray:
    """|survival_amplitude|^2, in [0, 1]."""
    amp = survival_amplitude(params, tau)
    p = np.abs(amp) ** 2
    return float(p) if np.isscalar(tau) else p


def zero_crossings(params: ModelParams, m_max: int) -> np.ndarray:
    """First m_max times at which the survival amplitude vanishes.

    Exists only in the strong coupling regime, where the amplitude crosses
    zero at t_m = 2 (m pi - arctan(w')) / w' with w' = sqrt(4 n R^2 - 1),
    m = 1, 2, ... Each closed-form time is polished by bisection on the
    (real) amplitude over a bracket of width 1e-3 to guard against branch
    mistakes, then verified to be a zero to 1e-10.

    Returns
    -------
    ndarray
        Strictly increasing times, length m_max.
    """
    if params.regime is not Regime.STRONG:
        raise ValueError(
            "zero crossings exist only in the strong coupling regime "
            f"(4 n R^2 > 1); got regime {params.regime.value}"
        )
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    w = params.oscillation_rate
    offset = math.atan(w)

    def amp_real(t: float) -> float:
        return survival_amplitude(params, t).real

    times = np.empty(m_max)
    for m in range(1, m_max + 1):
        t = 2.0 * (m * math.pi - offset) / w
        lo, hi = t - 5e-4, t + 5e-4
        flo, fhi = amp_real(lo), amp_real(hi)
        if flo * fhi < 0.0:
            # Bisection converges to machine precision in ~60 halvings.
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fmid = amp_real(mid)
                if flo * fmid <= 0.0:
                    hi, fhi = mid, fmid
                else:
                    lo, flo = mid, fmid
            t = 0.5 * (lo + hi)
        if abs(survival_amplitude(params, t)) >= ZERO_CROSSING_TOL:
            raise FloatingPointError(
                f"polished crossing m={m} is not a zero: |amp({t})| = "
                f"{abs(survival_amplitude(params, t)):.3e}"
            )
        times[m - 1] = t
    if np.any(np.diff(times) <= 0.0):
        raise FloatingPointError("zero crossings are not strictly increasing")
    return times
