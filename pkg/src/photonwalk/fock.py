"""Multi-photon configurations and transition statistics.

A configuration is the occupation vector (S_1..S_M) of N photons over M
modes. Transition probabilities between input S and output T under a
mode unitary U come from the N x N scattering submatrix built by
repeating the i-th column S_i times and the j-th row T_j times:

* bosons:          |Per(U^(S,T))|^2 / (prod S_i! * prod T_j!)
* fermions:        |Det(U^(S,T))|^2 / (prod S_i! * prod T_j!)
* distinguishable: the mean of the two numerators over the same
  denominator. This mixed rule normalizes over all outputs only for
  collision-free inputs (the determinant part vanishes identically when
  any input mode holds two photons); the conventional independent-photon
  rule Per(|U^(S,T)|^2)/denominator is available via
  ``distinguishable_rule="classical"`` for comparison. No equivalence
  between the two is asserted.

State strings come in two grammars: dense ``|100010001>`` (one digit per
mode) and sparse ``|3,1;5,1;8,1>`` (mode,count pairs; unmentioned modes
are empty). The formatter emits dense output up to 16 modes and
single-digit occupations, sparse beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    PauliExclusionError,
    PhotonNumberError,
    SimulationError,
    StateFormatError,
    check_deadline,
)
from .permanent import determinant, permanent
from .propagator import ProbabilitySeries, SpectralPropagator, sample_points

DENSE_MODE_LIMIT = 16
ENUMERATION_GUARD = 2_000_000


class ParticleStatistics(Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"
    DISTINGUISHABLE = "distinguishable"

    @classmethod
    def parse(cls, text: str) -> "ParticleStatistics":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise SimulationError(
                f"unknown particle statistics {text!r}; expected one of {names}"
            ) from None


def _as_configuration(c, M: int | None = None) -> tuple[int, ...]:
    if isinstance(c, str):
        if M is None:
            raise StateFormatError("state strings need an explicit mode count")
        return parse_state(c, M)
    config = tuple(int(x) for x in c)
    if any(x < 0 for x in config):
        raise StateFormatError(f"occupations must be nonnegative, got {config}")
    if M is not None and len(config) != M:
        raise StateFormatError(
            f"configuration has {len(config)} modes, expected {M}"
        )
    return config


def parse_state(text: str, M: int) -> tuple[int, ...]:
    """Parse either state-string grammar into an occupation vector."""
    if M < 1:
        raise StateFormatError("mode count must be >= 1")
    s = text.strip()
    if len(s) < 2 or not s.startswith("|") or not s.endswith(">"):
        raise StateFormatError(f"state string must be |...> delimited, got {text!r}")
    body = s[1:-1].replace(" ", "")
    if "," in body or ";" in body or body == "":
        return _parse_sparse(body, M, text)
    return _parse_dense(body, M, text)


def _parse_dense(body: str, M: int, original: str) -> tuple[int, ...]:
    if not body.isdigit():
        raise StateFormatError(f"dense state string has non-digit characters: {original!r}")
    if len(body) != M:
        raise StateFormatError(
            f"dense state string has {len(body)} digits but the layout has {M} modes"
        )
    return tuple(int(ch) for ch in body)


def _parse_sparse(body: str, M: int, original: str) -> tuple[int, ...]:
    occ = [0] * M
    if body == "":
        return tuple(occ)
    seen: set[int] = set()
    for item in body.split(";"):
        parts = item.split(",")
        if len(parts) != 2:
            raise StateFormatError(
                f"sparse state entries must be mode,count pairs, got {item!r} in {original!r}"
            )
        try:
            mode, count = int(parts[0]), int(parts[1])
        except ValueError:
            raise StateFormatError(
                f"non-integer sparse state entry {item!r} in {original!r}"
            ) from None
        if not 1 <= mode <= M:
            raise StateFormatError(f"mode index {mode} outside 1..{M} in {original!r}")
        if mode in seen:
            raise StateFormatError(f"duplicate mode index {mode} in {original!r}")
        if count < 0:
            raise StateFormatError(f"negative occupation in {original!r}")
        seen.add(mode)
        occ[mode - 1] = count
    return tuple(occ)


def format_state(c, sparse: bool | None = None) -> str:
    """Canonical state string; dense unless the layout or counts outgrow it."""
    config = _as_configuration(c)
    if sparse is None:
        sparse = len(config) > DENSE_MODE_LIMIT or (config and max(config) > 9)
    if not sparse:
        return "|" + "".join(str(x) for x in config) + ">"
    items = [f"{i + 1},{x}" for i, x in enumerate(config) if x > 0]
    return "|" + ";".join(items) + ">"


def configuration_count(M: int, N: int) -> int:
    return math.comb(N + M - 1, N)


def enumerate_configurations(M: int, N: int) -> list[tuple[int, ...]]:
    """All C(N+M-1, N) occupation vectors in descending lexicographic order,
    from (N,0,...,0) down to (0,...,0,N)."""
    if M < 1:
        raise SimulationError("mode count must be >= 1")
    if N < 0:
        raise SimulationError("photon number must be >= 0")
    current = [N] + [0] * (M - 1)
    out = [tuple(current)]
    if M == 1:
        return out
    while True:
        pivot = -1
        for i in range(M - 2, -1, -1):
            if current[i] > 0:
                pivot = i
                break
        if pivot < 0:
            return out
        current[pivot] -= 1
        tail = 1 + sum(current[pivot + 1:])
        for i in range(pivot + 1, M):
            current[i] = 0
        current[pivot + 1] = tail
        out.append(tuple(current))


def scattering_submatrix(u: np.ndarray, s, t) -> np.ndarray:
    """N x N submatrix: S_i copies of column i, T_j copies of row j,
    both taken in ascending mode order."""
    u = np.asarray(u, dtype=np.complex128)
    M = u.shape[0]
    s = _as_configuration(s, M)
    t = _as_configuration(t, M)
    if sum(s) != sum(t):
        raise PhotonNumberError(
            f"input has {sum(s)} photons but output has {sum(t)}"
        )
    cols = [i for i in range(M) for _ in range(s[i])]
    rows = [j for j in range(M) for _ in range(t[j])]
    return u[np.ix_(rows, cols)]


def factorial_product(c) -> int:
    prod = 1
    for x in c:
        prod *= math.factorial(int(x))
    return prod


def _check_unitary_shape(u) -> np.ndarray:
    a = np.ascontiguousarray(u, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SimulationError("mode transform must be a square matrix")
    if not np.all(np.isfinite(a)):
        raise SimulationError("mode transform must have finite entries")
    return a


def _check_fermionic_input(s, stats: ParticleStatistics) -> None:
    if stats is ParticleStatistics.FERMIONIC and s and max(s) > 1:
        raise PauliExclusionError(
            "fermionic statistics forbid multiply-occupied input modes"
        )


def transition_probability(
    u,
    s,
    t,
    stats: ParticleStatistics,
    distinguishable_rule: str = "mixed",
) -> float:
    """P(T|S) under the given statistics."""
    a = _check_unitary_shape(u)
    s = _as_configuration(s, a.shape[0])
    t = _as_configuration(t, a.shape[0])
    _check_fermionic_input(s, stats)
    if sum(s) != sum(t):
        raise PhotonNumberError(
            f"input has {sum(s)} photons but output has {sum(t)}"
        )
    if sum(s) == 0:
        return 1.0
    if stats is ParticleStatistics.FERMIONIC and max(t) > 1:
        return 0.0
    sub = scattering_submatrix(a, s, t)
    denom = factorial_product(s) * factorial_product(t)
    if stats is ParticleStatistics.BOSONIC:
        return abs(permanent(sub)) ** 2 / denom
    if stats is ParticleStatistics.FERMIONIC:
        return abs(determinant(sub)) ** 2 / denom
    if distinguishable_rule == "mixed":
        return 0.5 * (abs(permanent(sub)) ** 2 + abs(determinant(sub)) ** 2) / denom
    if distinguishable_rule == "classical":
        return permanent(np.abs(sub) ** 2).real / denom
    raise SimulationError(
        f"unknown distinguishable rule {distinguishable_rule!r}; use 'mixed' or 'classical'"
    )


@dataclass(frozen=True)
class OutputDistribution:
    """Probabilities over every N-photon configuration, descending lex order."""

    configurations: tuple[tuple[int, ...], ...]
    probabilities: np.ndarray

    def __post_init__(self):
        self.probabilities.setflags(write=False)

    def as_dict(self) -> dict[str, float]:
        return {
            format_state(c): float(p)
            for c, p in zip(self.configurations, self.probabilities)
        }

    def probability_of(self, c) -> float:
        target = _as_configuration(c)
        for config, p in zip(self.configurations, self.probabilities):
            if config == target:
                return float(p)
        raise SimulationError(f"configuration {target} not in distribution")


def full_distribution(
    u,
    s,
    stats: ParticleStatistics,
    distinguishable_rule: str = "mixed",
    deadline: float | None = None,
) -> OutputDistribution:
    """P(T|S) for every output configuration T."""
    a = _check_unitary_shape(u)
    M = a.shape[0]
    s = _as_configuration(s, M)
    _check_fermionic_input(s, stats)
    N = sum(s)
    count = configuration_count(M, N)
    if count > ENUMERATION_GUARD:
        raise SimulationError(
            f"{count} output configurations exceed the enumeration guard "
            f"({ENUMERATION_GUARD}); watch explicit states instead"
        )
    configs = enumerate_configurations(M, N)
    probs = np.empty(len(configs), dtype=np.float64)
    for idx, t in enumerate(configs):
        if idx % 256 == 0:
            check_deadline(deadline)
        probs[idx] = transition_probability(
            a, s, t, stats, distinguishable_rule=distinguishable_rule
        )
    return OutputDistribution(configurations=tuple(configs), probabilities=probs)


def two_particle_correlation(
    u,
    s,
    stats: ParticleStatistics,
    fixed=None,
) -> np.ndarray:
    """Gamma[q][r] = P(fixed + e_q + e_r | S): the joint distribution of two
    photons with the remaining N-2 pinned to the ``fixed`` configuration."""
    a = _check_unitary_shape(u)
    M = a.shape[0]
    s = _as_configuration(s, M)
    N = sum(s)
    if N < 2:
        raise SimulationError("two-photon correlation needs at least two photons")
    fixed = (0,) * M if fixed is None else _as_configuration(fixed, M)
    if sum(fixed) != N - 2:
        raise PhotonNumberError(
            f"fixed configuration holds {sum(fixed)} photons, expected {N - 2}"
        )
    gamma = np.empty((M, M), dtype=np.float64)
    for q in range(M):
        for r in range(q, M):
            t = list(fixed)
            t[q] += 1
            t[r] += 1
            p = transition_probability(a, s, t, stats)
            gamma[q, r] = p
            gamma[r, q] = p
    return gamma


def single_photon_marginal(u, s, stats: ParticleStatistics) -> np.ndarray:
    """Mean occupation fraction per mode: n_j = sum_T T_j P(T) / N.

    This is the single-photon view of the full multi-photon distribution;
    it accounts for one photon at a time and hides correlations.
    """
    a = _check_unitary_shape(u)
    s = _as_configuration(s, a.shape[0])
    N = sum(s)
    if N < 1:
        raise SimulationError("marginal needs at least one photon")
    dist = full_distribution(a, s, stats)
    marginal = np.zeros(a.shape[0], dtype=np.float64)
    for config, p in zip(dist.configurations, dist.probabilities):
        if p != 0.0:
            marginal += p * np.asarray(config, dtype=np.float64)
    return marginal / N


def state_probability_series(
    h,
    s,
    stats: ParticleStatistics,
    watch,
    z_range: tuple[float, float],
    deadline: float | None = None,
) -> ProbabilitySeries:
    """P(T|S) for each watched state at 100 evenly spaced z values,
    keyed by the canonical state string."""
    prop = SpectralPropagator(h)
    M = prop.n
    s = _as_configuration(s, M)
    _check_fermionic_input(s, stats)
    N = sum(s)
    watch_list = [_as_configuration(t, M) for t in watch]
    if not watch_list:
        raise SimulationError("watch list must not be empty")
    for t in watch_list:
        if sum(t) != N:
            raise PhotonNumberError(
                f"watched state {format_state(t)} has {sum(t)} photons, input has {N}"
            )
    zs = sample_points(z_range)
    traces = {format_state(t): np.empty(len(zs)) for t in watch_list}
    for i, z in enumerate(zs):
        check_deadline(deadline)
        u = prop.unitary(float(z))
        for t in watch_list:
            traces[format_state(t)][i] = transition_probability(u, s, t, stats)
    return ProbabilitySeries(z=zs, values=traces)
