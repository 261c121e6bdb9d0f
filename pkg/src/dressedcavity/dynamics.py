"""Excitation-transfer amplitudes, survival probability, and decay-rate fits.

The model is exactly solvable in the dressed eigenbasis, so time series come
from direct spectral summation: f_0nu(t) = sum_s t_0^s t_nu^s exp(-i Omega_s t).
No integrator, no accumulation error in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FitWindowError, InsufficientDataError
from .spectral import DressedSpectrum


@dataclass(frozen=True, eq=False)
class AmplitudeSet:
    """Complex amplitudes f_0nu(t) over all dressed labels at one time."""

    t: float
    f: np.ndarray

    @property
    def survival(self) -> float:
        """|f_00|^2, the probability the excitation is still on the atom."""
        return float(abs(self.f[0]) ** 2)

    @property
    def norm_residual(self) -> float:
        return float(abs(np.sum(np.abs(self.f) ** 2) - 1.0))


@dataclass(frozen=True, eq=False)
class SurvivalSeries:
    """Samples of (t, |f_00|^2, arg f_00) on a strictly increasing grid."""

    t: np.ndarray
    survival: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        for name in ("t", "survival", "phase"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if np.any(np.diff(self.t) <= 0.0):
            raise InsufficientDataError("time grid must be strictly increasing")


@dataclass(frozen=True)
class DecayFit:
    rate: float
    r_squared: float


def amplitudes(spectrum: DressedSpectrum, t: float) -> AmplitudeSet:
    """Amplitude on every dressed label nu at time t.

    f_0nu(t) = sum_s t_0^s t_nu^s exp(-i Omega_s t); at t = 0 this is the
    completeness relation, so f_00 = 1 and all others vanish.
    """
    v = spectrum.components
    phases = v[0, :] * np.exp(-1j * spectrum.omega_dressed * t)
    return AmplitudeSet(t=float(t), f=v @ phases)


def amplitude_matrix(spectrum: DressedSpectrum, t_grid: np.ndarray) -> np.ndarray:
    """f_0nu over a grid, shape (n_labels, n_times)."""
    v = spectrum.components
    phases = np.exp(-1j * np.outer(spectrum.omega_dressed, np.asarray(t_grid, dtype=float)))
    return (v * v[0, :][None, :]) @ phases


def survival_amplitude(spectrum: DressedSpectrum, t_grid: np.ndarray) -> np.ndarray:
    """f_00 over a grid; cheaper than the full amplitude matrix."""
    w = spectrum.atom_weights
    phases = np.exp(-1j * np.outer(np.asarray(t_grid, dtype=float), spectrum.omega_dressed))
    return phases @ w


def survival_series(spectrum: DressedSpectrum, t_grid: np.ndarray) -> SurvivalSeries:
    """Survival probability and phase of f_00 on an increasing time grid."""
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise InsufficientDataError("time grid is empty")
    f00 = survival_amplitude(spectrum, t)
    return SurvivalSeries(t=t, survival=np.abs(f00) ** 2, phase=np.angle(f00))


def decay_rate_fit(series: SurvivalSeries, window: tuple[float, float]) -> DecayFit:
    """Least-squares decay rate of ln survival over the window.

    Returns Gamma = -slope and the coefficient of determination.  Fails when
    fewer than 3 samples fall inside the window or when the survival signal
    has decayed into a nonpositive noise floor.
    """
    lo, hi = window
    mask = (series.t >= lo) & (series.t <= hi)
    if int(np.sum(mask)) < 3:
        raise InsufficientDataError(
            f"need at least 3 samples in window [{lo}, {hi}], got {int(np.sum(mask))}")
    surv = series.survival[mask]
    if np.any(surv <= 0.0):
        raise FitWindowError("survival is nonpositive inside the fit window")
    x = series.t[mask]
    y = np.log(surv)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = y - np.mean(y)
    ss_tot = float(np.sum(total ** 2))
    # a log-signal flat to machine precision is a perfect (zero-rate) exponential
    if ss_tot <= 1e-28 * y.size:
        return DecayFit(rate=-float(slope), r_squared=1.0)
    r2 = 1.0 - float(np.sum(residual ** 2)) / ss_tot
    return DecayFit(rate=-float(slope), r_squared=r2)


def wigner_weisskopf_rate(g: float) -> float:
    """Golden-rule survival decay rate for the linear-ladder model.

    With per-mode coupling eta*omega_k, resonant matrix element eta/2 in the
    frequency domain, and mode density R/pi, the rate is
    2*pi*(eta/2)^2*(R/pi) = pi*g, independent of R.
    """
    return math.pi * g
