import math

import numpy as np
import pytest

from photonwalk.errors import SimulationError, UnitarityError
from photonwalk.mesh import (
    BeamSplitterParam,
    MeshSpec,
    SplitterSite,
    boson_sampling_distribution,
    bs_transform,
    check_unitary,
    compose_mesh,
    mesh_layout,
    random_parameters,
    spec_from_parameters,
)


def test_block_values():
    assert np.array_equal(bs_transform(3, BeamSplitterParam(1, 2, 3, 0.0, 0.0)), np.eye(3))
    u = bs_transform(2, BeamSplitterParam(1, 1, 2, math.pi / 2, 0.0))
    assert np.max(np.abs(u - np.array([[0.0, -1.0], [1.0, 0.0]]))) < 1e-15


def test_block_unitarity():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = BeamSplitterParam(
            1, 2, 3, float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi))
        )
        u = bs_transform(4, p)
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-14


def test_param_validation():
    with pytest.raises(SimulationError):
        BeamSplitterParam(1, 1, 3, 0.0, 0.0)  # non-adjacent
    with pytest.raises(SimulationError):
        BeamSplitterParam(0, 1, 2, 0.0, 0.0)
    with pytest.raises(SimulationError):
        BeamSplitterParam(1, 1, 2, math.inf, 0.0)
    with pytest.raises(SimulationError):
        bs_transform(2, BeamSplitterParam(1, 2, 3, 0.0, 0.0))


def test_layout_counts():
    assert len(mesh_layout("reck", 10)) == 45
    assert len(mesh_layout("clements", 10)) == 45
    (only,) = mesh_layout("reck", 2)
    assert (only.m, only.n) == (1, 2)
    with pytest.raises(SimulationError):
        mesh_layout("reck", 1)
    with pytest.raises(SimulationError):
        mesh_layout("triangle", 4)


def test_clements_column_pattern():
    pairs = [(s.m, s.n) for s in mesh_layout("clements", 4)]
    assert pairs == [(1, 2), (3, 4), (2, 3), (1, 2), (3, 4), (2, 3)]
    orders = [s.order for s in mesh_layout("clements", 4)]
    assert orders == [1, 2, 3, 4, 5, 6]


def test_reck_is_triangular():
    sites = mesh_layout("reck", 4)
    assert [(s.m, s.n) for s in sites] == [
        (1, 2), (2, 3), (1, 2), (3, 4), (2, 3), (1, 2),
    ]
    # distinct board positions
    assert len({(s.x, s.y) for s in sites}) == len(sites)


def test_compose_identity():
    for style in ("reck", "clements"):
        sites = mesh_layout(style, 5)
        spec = MeshSpec(
            style=style,
            modes=5,
            splitters=tuple(
                BeamSplitterParam(s.order, s.m, s.n, 0.0, 0.0) for s in sites
            ),
        )
        assert np.array_equal(compose_mesh(spec), np.eye(5))


def test_compose_single_balanced():
    spec = MeshSpec(
        style="reck",
        modes=2,
        splitters=(BeamSplitterParam(1, 1, 2, math.pi / 4, 0.0),),
    )
    r = math.sqrt(0.5)
    assert np.max(np.abs(compose_mesh(spec) - np.array([[r, -r], [r, r]]))) < 1e-15


def test_compose_order_first_acts_first():
    a = BeamSplitterParam(1, 1, 2, 0.3, 0.9)
    b = BeamSplitterParam(2, 2, 3, 1.1, 0.2)
    spec = MeshSpec(style="reck", modes=3, splitters=(a, b, BeamSplitterParam(3, 1, 2, 0.0, 0.0)))
    expected = bs_transform(3, b) @ bs_transform(3, a)
    assert np.array_equal(compose_mesh(spec), expected)


def test_disjoint_blocks_commute():
    a = bs_transform(4, BeamSplitterParam(1, 1, 2, 0.7, 1.3))
    b = bs_transform(4, BeamSplitterParam(2, 3, 4, 0.4, 2.1))
    assert np.max(np.abs(a @ b - b @ a)) < 1e-14


def test_compose_random_is_unitary():
    for seed in range(5):
        m = 3 + seed
        u = compose_mesh(random_parameters("clements" if seed % 2 else "reck", m, seed))
        assert np.max(np.abs(u @ u.conj().T - np.eye(m))) <= 1e-12 * m


def test_mesh_spec_validation():
    sites = mesh_layout("reck", 3)
    good = tuple(BeamSplitterParam(s.order, s.m, s.n, 0.1, 0.2) for s in sites)
    with pytest.raises(SimulationError):
        MeshSpec(style="reck", modes=3, splitters=good[:2])
    dup = (good[0], good[1], BeamSplitterParam(1, 1, 2, 0.0, 0.0))
    with pytest.raises(SimulationError):
        MeshSpec(style="reck", modes=3, splitters=dup)
    with pytest.raises(SimulationError):
        MeshSpec(style="reck", modes=2, splitters=(BeamSplitterParam(1, 2, 3, 0.0, 0.0),))
    with pytest.raises(SimulationError):
        MeshSpec(style="spiral", modes=3, splitters=good)
    with pytest.raises(SimulationError):
        MeshSpec(style="reck", modes=3, splitters=good, diagonal=np.array([1.0, 2.0, 1.0]))
    phases = np.exp(1j * np.array([0.1, 0.2, 0.3]))
    assert MeshSpec(style="reck", modes=3, splitters=good, diagonal=phases).diagonal.shape == (3,)


def test_check_unitary():
    assert check_unitary(np.eye(3)).ok
    assert check_unitary(np.eye(3)).max_deviation == 0.0
    shear = check_unitary(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not shear.ok and shear.max_deviation > 0.1
    u = compose_mesh(random_parameters("reck", 6, 33))
    assert check_unitary(u, tol=1e-10).ok
    with pytest.raises(SimulationError):
        check_unitary(np.ones((2, 3)))


def test_random_parameters_ranges_and_determinism():
    spec1 = random_parameters("clements", 6, 99)
    spec2 = random_parameters("clements", 6, 99)
    assert spec1 == spec2
    for p in spec1.splitters:
        assert 0.0 <= p.theta <= math.pi / 2
        assert 0.0 <= p.phi < 2 * math.pi
    assert random_parameters("clements", 6, 100) != spec1


def test_spec_from_parameters_round_trip():
    spec = random_parameters("reck", 5, 7)
    rows = [(p.order, p.theta, p.phi) for p in spec.splitters]
    rebuilt = spec_from_parameters("reck", 5, rows)
    assert np.array_equal(compose_mesh(rebuilt), compose_mesh(spec))
    with pytest.raises(SimulationError):
        spec_from_parameters("reck", 5, rows[:-1])
    bad = list(rows)
    bad[0] = (2, 0.0, 0.0)
    with pytest.raises(SimulationError):
        spec_from_parameters("reck", 5, bad)


def test_boson_sampling_hom():
    spec = MeshSpec(
        style="reck",
        modes=2,
        splitters=(BeamSplitterParam(1, 1, 2, math.pi / 4, 0.0),),
    )
    d = boson_sampling_distribution(spec, (1, 1))
    assert np.max(np.abs(d.probabilities - np.array([0.5, 0.0, 0.5]))) < 1e-12


def test_boson_sampling_identity_mesh():
    sites = mesh_layout("clements", 4)
    spec = MeshSpec(
        style="clements",
        modes=4,
        splitters=tuple(BeamSplitterParam(s.order, s.m, s.n, 0.0, 0.0) for s in sites),
    )
    d = boson_sampling_distribution(spec, (0, 2, 1, 0))
    assert abs(d.probability_of((0, 2, 1, 0)) - 1.0) < 1e-12


def test_boson_sampling_rejects_non_unitary():
    with pytest.raises(UnitarityError) as err:
        boson_sampling_distribution(np.array([[1.0, 1.0], [0.0, 1.0]]), (1, 1))
    assert err.value.max_deviation > 0.1


def test_boson_sampling_accepts_raw_unitary():
    u = compose_mesh(random_parameters("reck", 3, 5))
    d = boson_sampling_distribution(u, (1, 1, 1))
    assert abs(d.probabilities.sum() - 1.0) < 1e-8


def test_twelve_mode_scenario_shape():
    spec = random_parameters("reck", 12, 7)
    d = boson_sampling_distribution(spec, tuple([0] * 9 + [1] * 3))
    assert len(d.configurations) == math.comb(14, 3) == 364
    assert abs(d.probabilities.sum() - 1.0) < 1e-8
