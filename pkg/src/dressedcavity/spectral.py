"""Dressed spectrum: eigen-decomposition of the coupling matrix plus an
independent secular-equation cross check.

The eigenfrequencies Omega_s are the square roots of the arrowhead
eigenvalues; the orthogonal eigenvector matrix supplies the components
t_nu^s of dressed mode s on bare coordinate nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketingError, ContractViolationError, DomainError, ModelInstabilityError
from .model import CouplingMatrix, ModeLadder, ModelParams, build_coupling_matrix, build_mode_ladder

# Relative accuracy targets; downstream phase errors grow linearly in t,
# and acceptance runs reach t ~ 1e3.
EIGENVALUE_RTOL = 1e-10
ROOT_RESIDUAL_RTOL = 1e-10
POLE_REJECT_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class DressedSpectrum:
    """Eigenfrequencies Omega_s (ascending) and components t_nu^s.

    components[nu, s] is the weight of dressed mode s on bare coordinate nu
    (nu = 0 atom, nu >= 1 field modes); the matrix is orthogonal.
    """

    omega_dressed: np.ndarray
    components: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega_dressed, dtype=float)
        comp = np.asarray(self.components, dtype=float)
        object.__setattr__(self, "omega_dressed", om)
        object.__setattr__(self, "components", comp)
        n = om.size
        if comp.shape != (n, n):
            raise ContractViolationError("components shape does not match frequency count")
        if np.any(om <= 0.0):
            raise ModelInstabilityError("dressed spectrum contains a nonpositive frequency")

    @property
    def size(self) -> int:
        return self.omega_dressed.size

    @property
    def atom_weights(self) -> np.ndarray:
        """Spectral weights (t_0^s)^2 of the atom coordinate; they sum to 1."""
        return self.components[0, :] ** 2

    def reconstruction_residual(self, matrix: CouplingMatrix) -> float:
        """Max-norm residual of V diag(Omega^2) V^T against the input matrix."""
        v = self.components
        rebuilt = (v * self.omega_dressed ** 2) @ v.T
        scale = np.max(np.abs(matrix.matrix))
        return float(np.max(np.abs(rebuilt - matrix.matrix)) / scale)


def diagonalize(matrix: CouplingMatrix) -> DressedSpectrum:
    """Full symmetric eigendecomposition, eigenpairs sorted ascending.

    Raises ModelInstabilityError when any eigenvalue is nonpositive, which
    signals invalid parameters (the arrowhead form is positive definite for
    every valid parameter set).
    """
    eigenvalues, vectors = np.linalg.eigh(matrix.matrix)
    if eigenvalues[0] <= 0.0:
        raise ModelInstabilityError(
            f"nonpositive squared frequency {eigenvalues[0]!r}; invalid parameters")
    return DressedSpectrum(omega_dressed=np.sqrt(eigenvalues), components=vectors)


def dressed_spectrum(params: ModelParams) -> DressedSpectrum:
    """Convenience chain: ladder -> coupling matrix -> diagonalize."""
    ladder = build_mode_ladder(params)
    return diagonalize(build_coupling_matrix(params, ladder))


def _secular(lam: float, omega_bar_sq: float, poles: np.ndarray, eta_sq: float) -> float:
    # f(lam) = omega_bar^2 - lam - eta^2 * lam * sum_k 1/(omega_k^2 - lam);
    # strictly decreasing between consecutive poles.
    return omega_bar_sq - lam - eta_sq * lam * float(np.sum(1.0 / (poles - lam)))


def _secular_derivative(lam: float, poles: np.ndarray, eta_sq: float) -> float:
    return -1.0 - eta_sq * float(np.sum(poles / (poles - lam) ** 2))


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo <= 0.0 or fhi >= 0.0:
        raise BracketingError(f"no sign change on [{lo!r}, {hi!r}]")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # interval collapsed to adjacent floats
            return mid
        fm = f(mid)
        if fm > 0.0:
            lo = mid
        elif fm < 0.0:
            hi = mid
        else:
            return mid


def secular_roots(params: ModelParams, ladder: ModeLadder) -> np.ndarray:
    """All N+1 dressed frequencies from the secular equation, by bisection.

    The characteristic equation of the arrowhead form reads
    omega_bar^2 - Omega^2 = sum_k eta^2 Omega^2 / (omega_k^2 - Omega^2);
    exactly one root lies in each pole-separated interval, so bisection is
    safe everywhere.  Roots landing within ~1e-12 (relative) of a pole are
    rejected rather than polished: they flag measure-zero parameter
    coincidences the caller should resolve by perturbing N or g.
    """
    if params.g <= 0.0:
        raise DomainError("secular_roots requires g > 0; roots coincide with poles at g = 0")
    omega_bar_sq = params.omega_bar ** 2
    poles = ladder.frequencies ** 2
    eta_sq = params.eta ** 2

    def f(lam):
        return _secular(lam, omega_bar_sq, poles, eta_sq)

    # Gershgorin upper bound on the largest eigenvalue.
    eta = params.eta
    row0 = omega_bar_sq + ladder.n_modes * eta_sq + eta * float(np.sum(ladder.frequencies))
    rowk = float(np.max(poles + eta * ladder.frequencies))
    top = max(row0, rowk) * (1.0 + 1e-9) + 1.0
    while f(top) >= 0.0:
        top *= 2.0

    edges = np.concatenate(([0.0], poles, [top]))
    roots = np.empty(ladder.n_modes + 1)
    for i in range(ladder.n_modes + 1):
        left, right = edges[i], edges[i + 1]
        width = right - left
        # keep endpoints strictly off the poles, at least one ulp in
        lo = max(left + width * 1e-14, np.nextafter(left, right)) if i > 0 else 0.0
        hi = min(right - width * 1e-14, np.nextafter(right, left)) \
            if i <= ladder.n_modes - 1 else right
        if i > 0 and f(lo) <= 0.0:
            raise BracketingError(
                f"root within bracketing tolerance of pole at interval [{left!r}, {right!r}]")
        if i <= ladder.n_modes - 1 and f(hi) >= 0.0:
            raise BracketingError(
                f"root within bracketing tolerance of pole at interval [{left!r}, {right!r}]")
        lam = _bisect(f, lo, hi)
        for edge in (left, right if i <= ladder.n_modes - 1 else None):
            if edge is not None and abs(lam - edge) < POLE_REJECT_RTOL * lam:
                raise BracketingError(
                    f"root {lam!r} within {POLE_REJECT_RTOL} of pole in [{left!r}, {right!r}]")
        residual = abs(f(lam) / _secular_derivative(lam, poles, eta_sq)) / lam
        if residual > ROOT_RESIDUAL_RTOL:
            raise BracketingError(
                f"secular residual {residual!r} exceeds {ROOT_RESIDUAL_RTOL} in "
                f"[{left!r}, {right!r}]")
        roots[i] = lam
    return np.sqrt(roots)


def interlacing_counts(spectrum: DressedSpectrum, ladder: ModeLadder) -> tuple[int, list[int], int]:
    """Count squared eigenvalues below omega_1^2, inside each pole gap, above omega_N^2."""
    lam = spectrum.omega_dressed ** 2
    poles = ladder.frequencies ** 2
    below = int(np.sum(lam < poles[0]))
    inside = [int(np.sum((lam > poles[k]) & (lam < poles[k + 1])))
              for k in range(len(poles) - 1)]
    above = int(np.sum(lam > poles[-1]))
    return below, inside, above
