"""Waveguide array geometry and tight-binding Hamiltonians.

A photonic lattice is a set of waveguides at fixed transverse positions.
Light hopping between neighbouring guides is governed by the evanescent
coupling coefficient, which for the femtosecond-written arrays modelled
here follows an empirical exponential fit of the guide spacing.

Unit canon used throughout the package:

* transverse positions in micrometers,
* Hamiltonian entries (propagation constants, couplings) in 1/cm,
* propagation length z in cm.

All boundary I/O (CLI flags, file formats, HTTP payloads) declares units
explicitly; nothing inside the package ever mixes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LayoutError, SimulationError


@dataclass(frozen=True)
class CouplingModel:
    """Exponential fit C(d) = amplitude * exp(-d / decay_length).

    amplitude is in 1/cm, decay_length in um. Couplings between guides
    farther apart than cutoff_distance (um) are set to exactly zero;
    pass ``cutoff_distance=None`` for the dense, uncut form. The default
    fit was measured in the 10-25 um spacing range; values outside that
    window are extrapolation.
    """

    amplitude: float = 41.42
    decay_length: float = 4.616
    cutoff_distance: float | None = 50.0

    def __post_init__(self):
        if not (self.amplitude > 0 and math.isfinite(self.amplitude)):
            raise SimulationError("coupling amplitude must be positive and finite")
        if not (self.decay_length > 0 and math.isfinite(self.decay_length)):
            raise SimulationError("coupling decay length must be positive and finite")
        if self.cutoff_distance is not None and not self.cutoff_distance > 0:
            raise SimulationError("coupling cutoff distance must be positive")


DEFAULT_COUPLING = CouplingModel()


class WaveguideLayout:
    """Ordered waveguide positions with 1-based labels.

    Node k of the array is row k-1 of ``positions``; labels are always
    the contiguous range 1..n. ``stochastic_flags`` marks which nodes
    receive random propagation-constant offsets in the stochastic-walk
    model (all nodes by default). Instances are immutable.
    """

    def __init__(self, positions, stochastic_flags=None):
        pos = np.array(positions, dtype=np.float64)
        if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] < 1:
            raise LayoutError("positions must be an (n, 2) array with n >= 1")
        if not np.all(np.isfinite(pos)):
            raise LayoutError("positions must be finite")
        n = pos.shape[0]
        seen: dict[tuple[float, float], int] = {}
        for i in range(n):
            key = (pos[i, 0], pos[i, 1])
            if key in seen:
                raise LayoutError(
                    f"nodes {seen[key]} and {i + 1} share identical coordinates {key}"
                )
            seen[key] = i + 1
        if stochastic_flags is None:
            flags = np.ones(n, dtype=bool)
        else:
            flags = np.array(stochastic_flags, dtype=bool)
            if flags.shape != (n,):
                raise LayoutError(
                    f"stochastic_flags length {flags.shape} does not match {n} nodes"
                )
        pos.setflags(write=False)
        flags.setflags(write=False)
        self.positions = pos
        self.stochastic_flags = flags

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def labels(self) -> np.ndarray:
        return np.arange(1, self.n + 1)

    def position_of(self, label: int) -> tuple[float, float]:
        check_label(label, self.n)
        return (float(self.positions[label - 1, 0]), float(self.positions[label - 1, 1]))

    def min_spacing(self) -> float:
        """Smallest pairwise distance in um; single-node layouts have none."""
        if self.n < 2:
            raise LayoutError("minimum spacing undefined for a single node")
        d = _distance_matrix(self.positions)
        return float(np.min(d[np.triu_indices(self.n, k=1)]))

    def __repr__(self):
        return f"WaveguideLayout(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, WaveguideLayout):
            return NotImplemented
        return (
            np.array_equal(self.positions, other.positions)
            and np.array_equal(self.stochastic_flags, other.stochastic_flags)
        )


@dataclass(frozen=True)
class Hamiltonian:
    """Dense tight-binding Hamiltonian, entries in 1/cm.

    The diagonal holds propagation constants beta_i, off-diagonals the
    couplings C_{i,j}. Built from a layout the matrix is real symmetric;
    the propagator accepts any Hermitian matrix.
    """

    matrix: np.ndarray
    beta_baseline: float = 0.0

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def check_label(label: int, n: int) -> None:
    if not isinstance(label, (int, np.integer)) or isinstance(label, bool):
        raise LayoutError(f"node label must be an integer, got {label!r}")
    if not 1 <= label <= n:
        raise LayoutError(f"node label {label} outside 1..{n}")


def coupling_coefficient(d: float, model: CouplingModel = DEFAULT_COUPLING) -> float:
    """Coupling in 1/cm between two guides spaced d um apart."""
    if not (d > 0 and math.isfinite(d)):
        raise SimulationError(f"guide spacing must be positive and finite, got {d}")
    if model.cutoff_distance is not None and d > model.cutoff_distance:
        return 0.0
    return model.amplitude * math.exp(-d / model.decay_length)


def _distance_matrix(pos: np.ndarray) -> np.ndarray:
    diff = pos[:, None, :] - pos[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


def build_hamiltonian(
    layout: WaveguideLayout,
    model: CouplingModel = DEFAULT_COUPLING,
    beta: float = 0.0,
) -> Hamiltonian:
    """Tight-binding Hamiltonian of a layout.

    H[i][i] = beta for every node (a uniform diagonal only contributes a
    global phase downstream); H[i][j] = C(d_ij) from the coupling model.
    d_ij and d_ji go through bitwise-identical float operations, so the
    result is exactly symmetric, not merely up to roundoff.
    """
    if not math.isfinite(beta):
        raise SimulationError("beta must be finite")
    n = layout.n
    d = _distance_matrix(layout.positions)
    h = np.zeros((n, n), dtype=np.float64)
    off = ~np.eye(n, dtype=bool)
    with np.errstate(divide="ignore"):
        h[off] = model.amplitude * np.exp(-d[off] / model.decay_length)
    if model.cutoff_distance is not None:
        h[off & (d > model.cutoff_distance)] = 0.0
    np.fill_diagonal(h, beta)
    h.setflags(write=False)
    return Hamiltonian(matrix=h, beta_baseline=beta)


def rectangular_lattice(nx: int, ny: int, dx: float, dy: float) -> WaveguideLayout:
    """Regular nx-by-ny grid, numbered left to right then top to bottom.

    Node 1 sits at the top-left corner; the top row carries the largest
    y coordinate so that on-screen orientation matches the numbering.
    """
    if nx < 1 or ny < 1:
        raise LayoutError(f"lattice extents must be >= 1, got {nx}x{ny}")
    if not (dx > 0 and dy > 0):
        raise LayoutError("lattice spacings must be positive")
    xs = np.arange(nx) * dx
    ys = (ny - 1 - np.arange(ny)) * dy
    pos = np.empty((nx * ny, 2), dtype=np.float64)
    for iy in range(ny):
        rows = slice(iy * nx, (iy + 1) * nx)
        pos[rows, 0] = xs
        pos[rows, 1] = ys[iy]
    return WaveguideLayout(pos)


def line_lattice(n: int, spacing: float) -> WaveguideLayout:
    """n guides on a horizontal line with uniform spacing (um)."""
    return rectangular_lattice(n, 1, spacing, spacing)
