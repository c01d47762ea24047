"""Single-photon evolution under the tight-binding Hamiltonian.

The photon state evolves as exp(-iHz) applied to the injection vector,
with the propagation length z (cm) standing in for time. H is Hermitian,
so the exponential is computed spectrally: one eigendecomposition serves
any number of z values and is unitary to machine precision, which keeps
probability conserved along propagation series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import LayoutError, SimulationError
from .lattice import Hamiltonian, WaveguideLayout, check_label

SERIES_POINTS = 100

# "Plot" and "Plot quickly" raster presets.
PLOT_RESOLUTION = (500, 500)
QUICK_RESOLUTION = (100, 100)

HERMITICITY_TOL = 1e-12


def _as_matrix(h) -> np.ndarray:
    m = h.matrix if isinstance(h, Hamiltonian) else np.asarray(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SimulationError("Hamiltonian must be a square matrix")
    if not np.all(np.isfinite(m)):
        raise SimulationError("Hamiltonian entries must be finite")
    asym = np.max(np.abs(m - m.conj().T))
    if asym > HERMITICITY_TOL:
        raise SimulationError(
            f"Hamiltonian is not Hermitian: max |H - H^dagger| = {asym:.3e}"
        )
    return m


def _check_z(z: float) -> float:
    if not math.isfinite(z):
        raise SimulationError(f"propagation length must be finite, got {z}")
    return float(z)


class SpectralPropagator:
    """Reusable eigendecomposition of a Hermitian Hamiltonian.

    Holds (eigenvalues, eigenvectors) once; evaluating the propagator at
    a new z is then just a phase rotation. Immutable and shareable.
    """

    def __init__(self, h):
        m = _as_matrix(h)
        self.n = m.shape[0]
        self.eigenvalues, self.eigenvectors = np.linalg.eigh(m)
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    def unitary(self, z: float) -> np.ndarray:
        # z = 0 is the exact identity; skip the rounding dust of V V^dagger
        if _check_z(z) == 0.0:
            return np.eye(self.n, dtype=np.complex128)
        v = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * z)
        return (v * phases) @ v.conj().T

    def evolve_state(self, state: np.ndarray, z: float) -> np.ndarray:
        if _check_z(z) == 0.0:
            return np.asarray(state, dtype=np.complex128).copy()
        v = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * z)
        return v @ (phases * (v.conj().T @ state))

    def injection_amplitudes(self, inject: int, z: float) -> np.ndarray:
        """Column `inject` of exp(-iHz), i.e. amplitudes a_j(z)."""
        check_label(inject, self.n)
        if _check_z(z) == 0.0:
            out = np.zeros(self.n, dtype=np.complex128)
            out[inject - 1] = 1.0
            return out
        v = self.eigenvectors
        coeffs = np.conj(v[inject - 1, :])
        phases = np.exp(-1j * self.eigenvalues * z)
        return v @ (phases * coeffs)

    def injection_series(self, inject: int, zs: np.ndarray) -> np.ndarray:
        """Amplitudes for many z at once, shape (n, len(zs))."""
        check_label(inject, self.n)
        v = self.eigenvectors
        coeffs = np.conj(v[inject - 1, :])
        phases = np.exp(-1j * np.outer(self.eigenvalues, np.asarray(zs, dtype=np.float64)))
        return v @ (phases * coeffs[:, None])


def unitary_propagator(h, z: float) -> np.ndarray:
    """Dense exp(-iHz). z >= 0 is the physical regime; negative z is
    accepted and gives the inverse evolution."""
    return SpectralPropagator(h).unitary(z)


def evolve(h, inject: int, z: float) -> np.ndarray:
    """Per-waveguide probabilities after length z from a single injection."""
    amps = SpectralPropagator(h).injection_amplitudes(inject, z)
    return np.abs(amps) ** 2


@dataclass(frozen=True)
class ProbabilitySeries:
    """Probabilities of watched quantities sampled along z.

    ``z`` holds the sample positions (cm), ``values`` maps each watched
    key (node label or state string) to its 100-point probability trace.
    """

    z: np.ndarray
    values: dict[Any, np.ndarray]


def sample_points(z_range: tuple[float, float]) -> np.ndarray:
    z0, z1 = float(z_range[0]), float(z_range[1])
    if not (math.isfinite(z0) and math.isfinite(z1)):
        raise SimulationError("z range must be finite")
    if z0 < 0 or z1 <= z0:
        raise SimulationError(f"need 0 <= z0 < z1, got ({z0}, {z1})")
    return np.linspace(z0, z1, SERIES_POINTS)


def _check_watch(watch, n: int) -> list[int]:
    labels = sorted({int(w) for w in watch})
    if not labels:
        raise SimulationError("watch set must not be empty")
    for w in labels:
        check_label(w, n)
    return labels


def probability_series(h, inject: int, z_range: tuple[float, float], watch) -> ProbabilitySeries:
    """P_j(z) for watched nodes at 100 evenly spaced z, endpoints included."""
    prop = SpectralPropagator(h)
    labels = _check_watch(watch, prop.n)
    zs = sample_points(z_range)
    amps = prop.injection_series(inject, zs)
    probs = np.abs(amps) ** 2
    return ProbabilitySeries(z=zs, values={w: probs[w - 1, :] for w in labels})


@dataclass(frozen=True)
class FaculaRaster:
    """Rendered intensity grid; row 0 of ``grid`` lies at y_min."""

    grid: np.ndarray
    extent: tuple[float, float, float, float]
    sigma: float


def default_sigma(layout: WaveguideLayout) -> float:
    """0.35 x minimum node spacing; 5 um for a single guide."""
    if layout.n < 2:
        return 5.0
    return 0.35 * layout.min_spacing()


def facula_raster(
    layout: WaveguideLayout,
    dist: np.ndarray,
    resolution: tuple[int, int] = PLOT_RESOLUTION,
    sigma: float | None = None,
) -> FaculaRaster:
    """Superpose a Gaussian spot of width sigma per node, scaled by P_j.

    Intensities are not renormalized: peak heights stay proportional to
    the probabilities. The extent covers every node padded by 3 sigma.
    """
    probs = np.asarray(dist, dtype=np.float64)
    if probs.shape != (layout.n,):
        raise SimulationError(
            f"distribution length {probs.shape} does not match {layout.n} nodes"
        )
    gx, gy = int(resolution[0]), int(resolution[1])
    if gx < 2 or gy < 2:
        raise SimulationError("raster resolution must be at least 2x2")
    if sigma is None:
        sigma = default_sigma(layout)
    if not (sigma > 0 and math.isfinite(sigma)):
        raise SimulationError("facula sigma must be positive")

    pos = layout.positions
    pad = 3.0 * sigma
    x_min, x_max = float(pos[:, 0].min() - pad), float(pos[:, 0].max() + pad)
    y_min, y_max = float(pos[:, 1].min() - pad), float(pos[:, 1].max() + pad)
    xs = np.linspace(x_min, x_max, gx)
    ys = np.linspace(y_min, y_max, gy)

    grid = np.zeros((gy, gx), dtype=np.float64)
    inv = 1.0 / (2.0 * sigma * sigma)
    for j in range(layout.n):
        if probs[j] == 0.0:
            continue
        gauss_x = np.exp(-((xs - pos[j, 0]) ** 2) * inv)
        gauss_y = np.exp(-((ys - pos[j, 1]) ** 2) * inv)
        grid += probs[j] * np.outer(gauss_y, gauss_x)
    return FaculaRaster(grid=grid, extent=(x_min, x_max, y_min, y_max), sigma=float(sigma))
