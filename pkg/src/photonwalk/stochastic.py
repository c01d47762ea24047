"""Quantum stochastic walks via piecewise-random propagation constants.

Decoherence is modelled by perturbing the Hamiltonian diagonal with
random offsets that stay constant over short z segments and are redrawn
independently per segment: within segment k the state evolves under
exp(-i (H + diag(db_k)) len_k). Ensemble averaging of the resulting
probability distributions plays the role of the density-matrix diagonal;
amplitudes of different realizations are mutually incoherent and are
never mixed.

Conventions:

* offsets are drawn uniformly on [-amplitude, +amplitude],
* the segment grid is anchored at z = 0 regardless of the observation
  window,
* config amplitudes are stated in 1/mm and segment lengths in mm (the
  scales the arrays are fabricated at); internally both convert to the
  package 1/cm-and-cm canon,
* random streams come from a counter-based generator keyed by
  (seed, realization index), so realization r is the same no matter how
  many workers run or in which order they finish.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import SimulationError, check_deadline
from .lattice import check_label
from .propagator import (
    ProbabilitySeries,
    _as_matrix,
    evolve,
    probability_series,
    sample_points,
)

MM_PER_CM = 10.0


@dataclass(frozen=True, eq=False)
class DBetaConfig:
    """Ensemble parameters. amplitude in 1/mm, z_interval in mm.

    ``stochastic_flags`` (usually ``layout.stochastic_flags``) selects
    which nodes receive offsets; None means all of them.
    """

    amplitude: float
    z_interval: float
    realizations: int = 1
    seed: int = 0
    stochastic_flags: np.ndarray | None = None

    def __post_init__(self):
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise SimulationError("amplitude must be >= 0 and finite")
        if not (self.z_interval > 0 and math.isfinite(self.z_interval)):
            raise SimulationError("z_interval must be positive and finite")
        if self.realizations < 1:
            raise SimulationError("need at least one realization")
        if not 0 <= int(self.seed) < 2**64:
            raise SimulationError("seed must fit an unsigned 64-bit integer")

    @property
    def segment_length_cm(self) -> float:
        return self.z_interval / MM_PER_CM


@dataclass(frozen=True, eq=False)
class DBetaProfile:
    """One realization's offsets, segment-by-segment, in 1/cm."""

    offsets: np.ndarray
    segment_length: float  # cm

    def __post_init__(self):
        self.offsets.setflags(write=False)

    @property
    def n_segments(self) -> int:
        return self.offsets.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.offsets.shape[1]

    def covers(self, z: float) -> bool:
        return self.n_segments * self.segment_length >= z - 1e-12


def segment_count(z_max: float, segment_length: float) -> int:
    """ceil(z_max / len) with a relative slop so exact multiples do not
    pick up a phantom segment from inexact division."""
    ratio = z_max / segment_length
    return max(1, math.ceil(ratio - 1e-9))


def _resolve_flags(cfg: DBetaConfig, n_nodes: int) -> np.ndarray:
    if cfg.stochastic_flags is None:
        return np.ones(n_nodes, dtype=bool)
    flags = np.asarray(cfg.stochastic_flags, dtype=bool)
    if flags.shape != (n_nodes,):
        raise SimulationError(
            f"stochastic flags cover {flags.shape[0]} nodes, layout has {n_nodes}"
        )
    return flags


def sample_dbeta_profile(
    cfg: DBetaConfig, n_nodes: int, z_max: float, realization: int = 0
) -> DBetaProfile:
    """Draw the piecewise offsets covering [0, z_max] (cm) for one
    realization. Identical (seed, realization) always gives an identical
    profile; unflagged nodes stay at zero."""
    if n_nodes < 1:
        raise SimulationError("profile needs at least one node")
    if not (z_max > 0 and math.isfinite(z_max)):
        raise SimulationError("z_max must be positive and finite")
    flags = _resolve_flags(cfg, n_nodes)
    segments = segment_count(z_max, cfg.segment_length_cm)
    seq = np.random.SeedSequence([int(cfg.seed), int(realization)])
    rng = np.random.Generator(np.random.Philox(seed=seq))
    draws = rng.uniform(-cfg.amplitude, cfg.amplitude, size=(segments, n_nodes))
    draws *= MM_PER_CM  # 1/mm -> 1/cm
    draws[:, ~flags] = 0.0
    return DBetaProfile(offsets=draws, segment_length=cfg.segment_length_cm)


def _segment_step(matrix, offsets, state, dz):
    evals, vecs = np.linalg.eigh(matrix + np.diag(offsets))
    return vecs @ (np.exp(-1j * evals * dz) * (vecs.conj().T @ state))


def evolve_piecewise(h, profile: DBetaProfile, inject: int, z: float) -> np.ndarray:
    """Probabilities after walking segment-by-segment up to z (cm)."""
    matrix = _as_matrix(h)
    n = matrix.shape[0]
    if profile.n_nodes != n:
        raise SimulationError(
            f"profile covers {profile.n_nodes} nodes, Hamiltonian has {n}"
        )
    check_label(inject, n)
    if not (z >= 0 and math.isfinite(z)):
        raise SimulationError("z must be >= 0 and finite")
    if not profile.covers(z):
        raise SimulationError(
            f"profile covers {profile.n_segments * profile.segment_length:.6g} cm, "
            f"requested z = {z:.6g} cm"
        )
    state = np.zeros(n, dtype=np.complex128)
    state[inject - 1] = 1.0
    length = profile.segment_length
    # segment starts come from k * length, not accumulation, so the
    # loop cannot drift past the final segment on long windows
    for k in range(profile.n_segments):
        start = k * length
        if start >= z - 1e-12:
            break
        dz = min(length, z - start)
        state = _segment_step(matrix, profile.offsets[k], state, dz)
    return np.abs(state) ** 2


def _run_indexed(indices, func, workers: int):
    if workers <= 1:
        return [func(r) for r in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, indices))


def qsw_run(
    h,
    cfg: DBetaConfig,
    inject: int,
    z: float,
    workers: int = 1,
    deadline: float | None = None,
) -> np.ndarray:
    """Ensemble-mean distribution at z over cfg.realizations profiles.

    Results are stacked by realization index before the mean, so the
    output is bit-identical for any worker count.
    """
    matrix = _as_matrix(h)
    n = matrix.shape[0]
    check_label(inject, n)
    if not (z >= 0 and math.isfinite(z)):
        raise SimulationError("z must be >= 0 and finite")
    if z == 0.0:
        out = np.zeros(n)
        out[inject - 1] = 1.0
        return out
    if cfg.amplitude == 0.0:
        # zero offsets collapse every realization to the deterministic
        # walk, so return it directly: exactly equal to the pure result
        return evolve(matrix, inject, z)

    def one(r: int) -> np.ndarray:
        check_deadline(deadline)
        profile = sample_dbeta_profile(cfg, n, z, realization=r)
        return evolve_piecewise(matrix, profile, inject, z)

    rows = _run_indexed(range(cfg.realizations), one, workers)
    return np.mean(np.stack(rows), axis=0)


def qsw_series(
    h,
    cfg: DBetaConfig,
    inject: int,
    z_range: tuple[float, float],
    watch,
    workers: int = 1,
    deadline: float | None = None,
) -> ProbabilitySeries:
    """Ensemble-mean probabilities of watched nodes at 100 z samples.

    Each realization's profile is drawn once for the whole window and
    held fixed across samples; the walker advances incrementally and
    reuses each segment's eigendecomposition.
    """
    matrix = _as_matrix(h)
    n = matrix.shape[0]
    check_label(inject, n)
    labels = sorted({int(w) for w in watch})
    if not labels:
        raise SimulationError("watch set must not be empty")
    for w in labels:
        check_label(w, n)
    if cfg.amplitude == 0.0:
        # exact degenerate case, same shortcut as qsw_run
        return probability_series(matrix, inject, z_range, labels)
    zs = sample_points(z_range)
    z_end = float(zs[-1])

    def one(r: int) -> np.ndarray:
        check_deadline(deadline)
        profile = sample_dbeta_profile(cfg, n, z_end, realization=r)
        length = profile.segment_length
        state = np.zeros(n, dtype=np.complex128)
        state[inject - 1] = 1.0
        eig_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        out = np.empty((len(zs), len(labels)))
        z_cur = 0.0
        seg = 0
        for j, zj in enumerate(zs):
            target = float(zj)
            while z_cur < target - 1e-15:
                seg_end = (seg + 1) * length
                stop = min(seg_end, target)
                dz = stop - z_cur
                if seg not in eig_cache:
                    eig_cache[seg] = np.linalg.eigh(
                        matrix + np.diag(profile.offsets[seg])
                    )
                evals, vecs = eig_cache[seg]
                state = vecs @ (np.exp(-1j * evals * dz) * (vecs.conj().T @ state))
                z_cur = stop
                if z_cur >= seg_end - 1e-15:
                    seg += 1
            probs = np.abs(state) ** 2
            out[j] = [probs[w - 1] for w in labels]
        return out

    rows = _run_indexed(range(cfg.realizations), one, workers)
    mean = np.mean(np.stack(rows), axis=0)
    return ProbabilitySeries(z=zs, values={w: mean[:, i] for i, w in enumerate(labels)})
