import numpy as np
import pytest

from photonwalk.errors import SimulationError
from photonwalk.lattice import (
    Hamiltonian,
    WaveguideLayout,
    build_hamiltonian,
    coupling_coefficient,
    line_lattice,
)
from photonwalk.propagator import (
    SpectralPropagator,
    default_sigma,
    evolve,
    facula_raster,
    probability_series,
    unitary_propagator,
)


def expm_taylor(a: np.ndarray) -> np.ndarray:
    """Plain Taylor series for exp(a); independent of the spectral route."""
    n = a.shape[0]
    term = np.eye(n, dtype=np.complex128)
    total = term.copy()
    for k in range(1, 400):
        term = term @ a / k
        total = total + term
        if np.max(np.abs(term)) < 1e-18:
            return total
    raise RuntimeError("Taylor series did not converge")


def random_hermitian(n: int, rng) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def two_mode_hamiltonian(c: float) -> Hamiltonian:
    return Hamiltonian(matrix=np.array([[0.0, c], [c, 0.0]]))


def test_zero_length_is_identity():
    h = build_hamiltonian(line_lattice(6, 14.0))
    u = unitary_propagator(h, 0.0)
    assert np.max(np.abs(u - np.eye(6))) < 1e-14


def test_unitarity_random_hermitian():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 40))
        h = random_hermitian(n, rng)
        u = unitary_propagator(h, float(rng.uniform(0, 4)))
        assert np.max(np.abs(u.conj().T @ u - np.eye(n))) <= 1e-12 * n


def test_two_mode_coupler_closed_form():
    c = coupling_coefficient(15.0)
    h = two_mode_hamiltonian(c)
    for z in np.linspace(0.0, 2.0, 100):
        u = unitary_propagator(h, float(z))
        assert abs(abs(u[1, 0]) ** 2 - np.sin(c * z) ** 2) < 1e-8


def test_rejects_non_hermitian():
    with pytest.raises(SimulationError):
        unitary_propagator(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)


def test_rejects_nonfinite_z_and_matrix():
    h = build_hamiltonian(line_lattice(2, 15.0))
    with pytest.raises(SimulationError):
        unitary_propagator(h, np.inf)
    with pytest.raises(SimulationError):
        unitary_propagator(np.array([[np.nan]]), 1.0)


def test_evolve_at_zero():
    h = build_hamiltonian(line_lattice(5, 15.0))
    p = evolve(h, 3, 0.0)
    assert abs(p[2] - 1.0) < 1e-14
    assert np.all(p >= 0) and abs(p.sum() - 1.0) < 1e-10


def test_evolve_mirror_symmetry():
    h = build_hamiltonian(line_lattice(9, 15.0))
    p = evolve(h, 5, 1.3)
    assert np.max(np.abs(p - p[::-1])) < 1e-10


def test_evolve_matches_taylor_oracle():
    h = build_hamiltonian(line_lattice(9, 15.0))
    rng = np.random.default_rng(5)
    for _ in range(5):
        z = float(rng.uniform(0.1, 2.0))
        u_oracle = expm_taylor(-1j * z * h.matrix)
        p_oracle = np.abs(u_oracle[:, 3]) ** 2
        assert np.max(np.abs(evolve(h, 4, z) - p_oracle)) < 1e-8


def test_evolve_validates_inject():
    h = build_hamiltonian(line_lattice(4, 15.0))
    with pytest.raises(SimulationError):
        evolve(h, 0, 1.0)
    with pytest.raises(SimulationError):
        evolve(h, 5, 1.0)


def test_global_phase_invariance():
    layout = line_lattice(7, 13.0)
    p0 = evolve(build_hamiltonian(layout, beta=0.0), 4, 0.8)
    p1 = evolve(build_hamiltonian(layout, beta=57.5), 4, 0.8)
    assert np.max(np.abs(p0 - p1)) < 1e-10


def test_time_composability_and_reversibility():
    rng = np.random.default_rng(9)
    h = random_hermitian(12, rng)
    prop = SpectralPropagator(h)
    u1, u2 = prop.unitary(0.7), prop.unitary(0.45)
    assert np.max(np.abs(prop.unitary(1.15) - u1 @ u2)) < 1e-10 * 12
    assert np.max(np.abs(prop.unitary(0.7) @ prop.unitary(-0.7) - np.eye(12))) < 1e-10 * 12


def test_series_basics():
    h = build_hamiltonian(line_lattice(5, 15.0))
    s = probability_series(h, 3, (0.0, 2.0), {3})
    assert s.z.shape == (100,)
    assert s.z[0] == 0.0 and s.z[-1] == 2.0
    assert abs(s.values[3][0] - 1.0) < 1e-14
    assert np.all(s.values[3] >= 0) and np.all(s.values[3] <= 1 + 1e-12)


def test_series_two_mode_matches_sine():
    c = coupling_coefficient(15.0)
    s = probability_series(two_mode_hamiltonian(c), 1, (0.0, 1.5), {2})
    assert np.max(np.abs(s.values[2] - np.sin(c * s.z) ** 2)) < 1e-8


def test_series_probability_conserved_at_every_sample():
    h = build_hamiltonian(line_lattice(6, 13.0))
    s = probability_series(h, 2, (0.0, 3.0), {1, 2, 3, 4, 5, 6})
    total = np.sum([s.values[k] for k in range(1, 7)], axis=0)
    assert np.max(np.abs(total - 1.0)) < 1e-10


def test_series_validation():
    h = build_hamiltonian(line_lattice(4, 15.0))
    with pytest.raises(SimulationError):
        probability_series(h, 1, (0.0, 2.0), set())
    with pytest.raises(SimulationError):
        probability_series(h, 1, (2.0, 2.0), {1})
    with pytest.raises(SimulationError):
        probability_series(h, 1, (-0.5, 2.0), {1})
    with pytest.raises(SimulationError):
        probability_series(h, 1, (0.0, 2.0), {9})


def test_facula_single_peak():
    layout = WaveguideLayout([[0.0, 0.0]])
    r = facula_raster(layout, np.array([1.0]), resolution=(101, 101), sigma=2.0)
    iy, ix = np.unravel_index(np.argmax(r.grid), r.grid.shape)
    assert ix == 50 and iy == 50
    row = r.grid[50, 50:]
    assert all(a > b for a, b in zip(row, row[1:]))
    assert r.extent == (-6.0, 6.0, -6.0, 6.0)


def test_facula_two_equal_peaks():
    layout = line_lattice(2, 20.0)
    r = facula_raster(layout, np.array([0.5, 0.5]), resolution=(200, 120), sigma=3.0)
    left = r.grid[:, :100].max()
    right = r.grid[:, 100:].max()
    assert abs(left - right) < 1e-10


def test_facula_integral_matches_gaussian_mass():
    layout = line_lattice(3, 18.0)
    probs = np.array([0.2, 0.5, 0.3])
    sigma = 4.0
    r = facula_raster(layout, probs, resolution=(256, 256), sigma=sigma)
    x_min, x_max, y_min, y_max = r.extent
    cell = ((x_max - x_min) / 255) * ((y_max - y_min) / 255)
    integral = r.grid.sum() * cell
    expected = 2 * np.pi * sigma**2 * probs.sum()
    assert abs(integral - expected) / expected < 0.01


def test_facula_default_sigma_and_validation():
    layout = line_lattice(3, 10.0)
    assert abs(default_sigma(layout) - 3.5) < 1e-12
    assert default_sigma(WaveguideLayout([[0, 0]])) == 5.0
    with pytest.raises(SimulationError):
        facula_raster(layout, np.array([1.0]), resolution=(100, 100))
    with pytest.raises(SimulationError):
        facula_raster(layout, np.array([0.3, 0.3, 0.4]), resolution=(1, 100))
    with pytest.raises(SimulationError):
        facula_raster(layout, np.array([0.3, 0.3, 0.4]), sigma=-1.0)
