"""Beam-splitter mesh construction and composition.

An M-mode interferometer is a product of two-mode blocks acting on
adjacent channel pairs,

    T(m, m+1; theta, phi) = [[e^{i phi} cos theta, -sin theta],
                             [e^{i phi} sin theta,  cos theta]]

embedded in the identity, optionally left-multiplied by a diagonal of
unit phases: U = D * T_K * ... * T_1 with splitter 1 acting first on the
state. Two standard arrangements are provided: the triangular mesh and
the rectangular mesh of alternating odd/even columns. Both hold exactly
M(M-1)/2 splitters. Composition of an arbitrary unitary into angles is
deliberately out of scope; the mesh is a forward construction only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SimulationError, UnitarityError
from .fock import OutputDistribution, _as_configuration, full_distribution, ParticleStatistics

STYLES = ("reck", "clements")


@dataclass(frozen=True)
class BeamSplitterParam:
    """One splitter: mesh position ``order`` (1-based, application order),
    adjacent channels (m, n) with n = m+1, and angles in radians."""

    order: int
    m: int
    n: int
    theta: float
    phi: float

    def __post_init__(self):
        if self.order < 1:
            raise SimulationError(f"splitter order must be >= 1, got {self.order}")
        if self.n != self.m + 1 or self.m < 1:
            raise SimulationError(
                f"splitter channels must be adjacent (m, m+1), got ({self.m}, {self.n})"
            )
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise SimulationError("splitter angles must be finite")


@dataclass(frozen=True)
class SplitterSite:
    """Channel pair plus board coordinates for rendering."""

    order: int
    m: int
    n: int
    x: float
    y: float


@dataclass(frozen=True, eq=False)
class MeshSpec:
    style: str
    modes: int
    splitters: tuple[BeamSplitterParam, ...]
    diagonal: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __eq__(self, other):
        if not isinstance(other, MeshSpec):
            return NotImplemented
        return (
            self.style == other.style
            and self.modes == other.modes
            and self.splitters == other.splitters
            and np.array_equal(self.diagonal, other.diagonal)
        )

    def __post_init__(self):
        if self.style not in STYLES:
            raise SimulationError(f"mesh style must be one of {STYLES}, got {self.style!r}")
        if self.modes < 2:
            raise SimulationError("a mesh needs at least 2 modes")
        expected = self.modes * (self.modes - 1) // 2
        if len(self.splitters) != expected:
            raise SimulationError(
                f"{self.style} mesh on {self.modes} modes needs {expected} splitters, "
                f"got {len(self.splitters)}"
            )
        if sorted(p.order for p in self.splitters) != list(range(1, expected + 1)):
            raise SimulationError("splitter orders must be a permutation of 1..K")
        for p in self.splitters:
            if p.n > self.modes:
                raise SimulationError(
                    f"splitter channels ({p.m}, {p.n}) exceed {self.modes} modes"
                )
        diag = self.diagonal
        if diag is None:
            diag = np.ones(self.modes, dtype=np.complex128)
        else:
            diag = np.asarray(diag, dtype=np.complex128)
            if diag.shape != (self.modes,):
                raise SimulationError("diagonal must hold one phase per mode")
            if np.max(np.abs(np.abs(diag) - 1.0)) > 1e-12:
                raise SimulationError("diagonal entries must have unit modulus")
        diag.setflags(write=False)
        object.__setattr__(self, "diagonal", diag)


def bs_transform(M: int, p: BeamSplitterParam) -> np.ndarray:
    """The M x M embedding of one splitter block."""
    if p.n > M:
        raise SimulationError(f"splitter channels ({p.m}, {p.n}) exceed {M} modes")
    u = np.eye(M, dtype=np.complex128)
    c, s = math.cos(p.theta), math.sin(p.theta)
    ph = complex(math.cos(p.phi), math.sin(p.phi))
    i, j = p.m - 1, p.n - 1
    u[i, i] = ph * c
    u[i, j] = -s
    u[j, i] = ph * s
    u[j, j] = c
    return u


def mesh_layout(style: str, M: int) -> list[SplitterSite]:
    """Channel pairs and board coordinates, in application order."""
    style = style.strip().lower()
    if style not in STYLES:
        raise SimulationError(f"mesh style must be one of {STYLES}, got {style!r}")
    if M < 2:
        raise SimulationError("a mesh needs at least 2 modes")
    sites: list[SplitterSite] = []
    if style == "reck":
        # triangular: diagonal blocks b = 1..M-1, climbing back up to channel 1
        for b in range(1, M):
            for j in range(b, 0, -1):
                sites.append(
                    SplitterSite(
                        order=len(sites) + 1,
                        m=j,
                        n=j + 1,
                        x=float(2 * b - j),
                        y=j + 0.5,
                    )
                )
    else:
        # rectangular: M columns alternating odd pairs (1,2),(3,4),.. and
        # even pairs (2,3),(4,5),..
        for col in range(1, M + 1):
            start = 1 if col % 2 == 1 else 2
            for m in range(start, M, 2):
                sites.append(
                    SplitterSite(
                        order=len(sites) + 1,
                        m=m,
                        n=m + 1,
                        x=float(col),
                        y=m + 0.5,
                    )
                )
    assert len(sites) == M * (M - 1) // 2
    return sites


def compose_mesh(spec: MeshSpec) -> np.ndarray:
    """U = D * T_K * ... * T_1 (ascending order acts first on the state)."""
    u = np.eye(spec.modes, dtype=np.complex128)
    for p in sorted(spec.splitters, key=lambda q: q.order):
        u = bs_transform(spec.modes, p) @ u
    return np.diag(spec.diagonal) @ u


@dataclass(frozen=True)
class UnitarityReport:
    ok: bool
    max_deviation: float
    tol: float


def check_unitary(u, tol: float = 1e-8) -> UnitarityReport:
    """Largest entry of |U U^dagger - I| against a tolerance."""
    a = np.asarray(u, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SimulationError("unitarity check needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise SimulationError("unitarity check needs finite entries")
    dev = float(np.max(np.abs(a @ a.conj().T - np.eye(a.shape[0]))))
    return UnitarityReport(ok=dev <= tol, max_deviation=dev, tol=tol)


def spec_from_parameters(style: str, M: int, rows) -> MeshSpec:
    """Attach (order, theta, phi) rows to the named layout's channel pairs."""
    sites = mesh_layout(style, M)
    entries = [(int(o), float(th), float(ph)) for o, th, ph in rows]
    expected = len(sites)
    if sorted(o for o, _, _ in entries) != list(range(1, expected + 1)):
        raise SimulationError(
            f"parameter orders must be a permutation of 1..{expected}"
        )
    by_order = {o: (th, ph) for o, th, ph in entries}
    splitters = tuple(
        BeamSplitterParam(
            order=site.order,
            m=site.m,
            n=site.n,
            theta=by_order[site.order][0],
            phi=by_order[site.order][1],
        )
        for site in sites
    )
    return MeshSpec(style=style.strip().lower(), modes=M, splitters=splitters)


def random_parameters(style: str, M: int, seed: int) -> MeshSpec:
    """Independent uniform angles: theta on [0, pi/2] covers every
    reflectivity once, phi on [0, 2pi). Not a Haar-uniform unitary."""
    sites = mesh_layout(style, M)
    rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence(int(seed))))
    thetas = rng.uniform(0.0, math.pi / 2, len(sites))
    phis = rng.uniform(0.0, 2 * math.pi, len(sites))
    splitters = tuple(
        BeamSplitterParam(order=s.order, m=s.m, n=s.n, theta=float(th), phi=float(ph))
        for s, th, ph in zip(sites, thetas, phis)
    )
    return MeshSpec(style=style.strip().lower(), modes=M, splitters=splitters)


def boson_sampling_distribution(spec_or_u, s, deadline: float | None = None) -> OutputDistribution:
    """Exact bosonic output distribution of a mesh (or a raw unitary).

    Raw matrices must pass the unitarity check first; composed meshes are
    unitary by construction.
    """
    if isinstance(spec_or_u, MeshSpec):
        u = compose_mesh(spec_or_u)
    else:
        u = np.asarray(spec_or_u, dtype=np.complex128)
        report = check_unitary(u)
        if not report.ok:
            raise UnitarityError(
                f"imported matrix is not unitary: max |UU^dagger - I| = "
                f"{report.max_deviation:.3e} exceeds {report.tol:.1e}",
                max_deviation=report.max_deviation,
            )
    config = _as_configuration(s, u.shape[0])
    return full_distribution(u, config, ParticleStatistics.BOSONIC, deadline=deadline)
