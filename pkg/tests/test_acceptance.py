"""Acceptance gate: one check per shipped guarantee.

Run with ``pytest -s tests/test_acceptance.py`` to see one printed
PASS/FAIL line per criterion, each with its measured runtime against
the stated budget.
"""

import csv
import math
import time

import numpy as np

from photonwalk import cli
from photonwalk.fock import ParticleStatistics, full_distribution, transition_probability
from photonwalk.formats import (
    read_distribution,
    read_parameters,
    read_positions,
    read_results,
    read_series,
    read_unitary,
    write_distribution,
    write_parameters,
    write_positions,
    write_unitary,
)
from photonwalk.lattice import (
    WaveguideLayout,
    build_hamiltonian,
    coupling_coefficient,
    line_lattice,
)
from photonwalk.mesh import (
    BeamSplitterParam,
    bs_transform,
    compose_mesh,
    random_parameters,
)
from photonwalk.permanent import (
    ALGORITHMS,
    bench_permanents,
    dispatch_algorithm,
    permanent,
)
from photonwalk.propagator import SpectralPropagator, evolve
from photonwalk.stochastic import (
    DBetaConfig,
    evolve_piecewise,
    qsw_run,
    qsw_series,
    sample_dbeta_profile,
)


def _report(number: int, name: str, budget: float, fn) -> None:
    t0 = time.perf_counter()
    try:
        detail = fn() or ""
    except BaseException as exc:
        dt = time.perf_counter() - t0
        print(
            f"[acceptance] {number:02d} {name}: FAIL in {dt:.1f}s; {exc}",
            flush=True,
        )
        raise
    dt = time.perf_counter() - t0
    ok = dt < budget
    verdict = "PASS" if ok else "FAIL"
    extra = f"; {detail}" if detail else ""
    print(
        f"[acceptance] {number:02d} {name}: {verdict} in {dt:.1f}s"
        f" (budget {budget:.0f}s){extra}",
        flush=True,
    )
    assert ok, f"{name}: runtime {dt:.1f}s exceeded the {budget:.0f}s budget"


def scattered_layout(n, seed, box=60.0):
    rng = np.random.default_rng(seed)
    while True:
        pos = rng.uniform(0, box, size=(n, 2))
        d = np.sqrt(((pos[:, None] - pos[None]) ** 2).sum(-1))
        if np.min(d[np.triu_indices(n, 1)]) > 10.0:
            return WaveguideLayout(pos)


def positional_variance(probs, xs):
    mu = float(np.sum(probs * xs))
    return float(np.sum(probs * (xs - mu) ** 2))


def total_variation(p, q):
    return 0.5 * float(np.sum(np.abs(p - q)))


def test_01_permanent_oracle_suite():
    def check():
        hand = np.array([[1, 2], [3, 4]], dtype=complex)
        for name, fn in ALGORITHMS.items():
            assert fn(hand) == 10.0 + 0.0j, f"{name} on the hand-checked 2x2"
        for n in range(1, 11):
            for name, fn in ALGORITHMS.items():
                assert fn(np.eye(n, dtype=complex)) == 1.0 + 0.0j, f"{name} identity"
                assert fn(np.ones((n, n), dtype=complex)) == float(
                    math.factorial(n)
                ), f"{name} all-ones n={n}"
        rng = np.random.default_rng(20260814)
        worst = 0.0
        for n in range(1, 11):
            for _ in range(200):
                m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                ref = permanent(m)
                scale = max(abs(ref), 1e-300)
                for name, fn in ALGORITHMS.items():
                    rel = abs(fn(m) - ref) / scale
                    worst = max(worst, rel)
                    assert rel <= 1e-9, f"{name} disagrees at n={n}: rel={rel:.2e}"
        return f"5 algorithms x 200 matrices x n=1..10, worst rel err {worst:.1e}"

    _report(1, "permanent-oracle-suite", 60.0, check)


def test_02_bench_trend_and_dispatch():
    def check():
        report = bench_permanents(range(2, 17), trials=5, seed=2026)
        medians = {(e.algorithm, e.n): e.median_ns for e in report.entries}
        gg, rg = medians[("glynn-gray", 14)], medians[("ryser-gray", 14)]
        assert gg <= 1.1 * rg, f"glynn-gray {gg}ns vs ryser-gray {rg}ns at n=14"
        assert dispatch_algorithm(5) == "ryser-gray"
        assert dispatch_algorithm(7) == "glynn-gray"
        return f"n=14 glynn-gray/ryser-gray = {gg / rg:.2f}; routing 5->RG, 7->GG"

    _report(2, "bench-trend-and-dispatch", 300.0, check)


def test_03_unitarity_and_normalization():
    def check():
        rng = np.random.default_rng(3)
        worst_u, worst_p = 0.0, 0.0
        for _ in range(1000):
            n = int(rng.integers(2, 65))
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = (a + a.conj().T) / 2
            z = float(rng.uniform(0.0, 5.0))
            prop = SpectralPropagator(h)
            u = prop.unitary(z)
            dev = float(np.max(np.abs(u.conj().T @ u - np.eye(n))))
            assert dev <= 1e-12 * n, f"unitarity {dev:.2e} at n={n}"
            inject = int(rng.integers(1, n + 1))
            total = float(np.sum(np.abs(prop.injection_amplitudes(inject, z)) ** 2))
            assert abs(total - 1.0) <= 1e-10, f"sum P = {total}"
            worst_u = max(worst_u, dev / n)
            worst_p = max(worst_p, abs(total - 1.0))
        return f"1000 systems; worst dev/n {worst_u:.1e}, worst |sum-1| {worst_p:.1e}"

    _report(3, "unitarity-normalization", 30.0, check)


def test_04_two_mode_coupler():
    def check():
        spacing = 15.0
        c = coupling_coefficient(spacing)
        h = build_hamiltonian(line_lattice(2, spacing))
        worst = 0.0
        for z in np.linspace(0.0, 2 * np.pi / c, 100):
            got = evolve(h, 1, float(z))[1]
            worst = max(worst, abs(got - math.sin(c * z) ** 2))
        assert worst <= 1e-8, f"|U21|^2 deviates by {worst:.2e}"
        return f"100 z samples, worst deviation {worst:.1e}"

    _report(4, "two-mode-coupler", 1.0, check)


def test_05_hom_triple():
    def check():
        u = bs_transform(
            2, BeamSplitterParam(order=1, m=1, n=2, theta=math.pi / 4, phi=0.0)
        )
        bos = transition_probability(u, (1, 1), (1, 1), ParticleStatistics.BOSONIC)
        fer = transition_probability(u, (1, 1), (1, 1), ParticleStatistics.FERMIONIC)
        dis = transition_probability(
            u, (1, 1), (1, 1), ParticleStatistics.DISTINGUISHABLE
        )
        assert abs(bos) <= 1e-12 and abs(fer - 1.0) <= 1e-12 and abs(dis - 0.5) <= 1e-12
        return f"P(1,1) = {bos:.1e} / {fer:.12f} / {dis:.12f}"

    _report(5, "hom-triple", 1.0, check)


def test_06_distribution_normalization():
    def check():
        rng = np.random.default_rng(6)
        worst = 0.0
        for trial in range(50):
            modes = int(rng.integers(2, 7))
            photons = int(rng.integers(1, min(3, modes) + 1))
            style = ("reck", "clements")[trial % 2]
            u = compose_mesh(random_parameters(style, modes, seed=int(rng.integers(2**32))))
            s = np.zeros(modes, dtype=int)
            s[rng.choice(modes, size=photons, replace=False)] = 1
            for stats in ParticleStatistics:
                total = float(np.sum(full_distribution(u, s, stats).probabilities))
                worst = max(worst, abs(total - 1.0))
                assert abs(total - 1.0) <= 1e-8, f"{stats.value} sums to {total}"
        return f"50 meshes x 3 statistics, worst |sum-1| {worst:.1e}"

    _report(6, "distribution-normalization", 120.0, check)


def test_07_qsw_degeneration_and_reproducibility():
    def check():
        rng = np.random.default_rng(7)
        worst = 0.0
        for trial in range(20):
            layout = scattered_layout(int(rng.integers(3, 10)), seed=700 + trial)
            h = build_hamiltonian(layout)
            cfg = DBetaConfig(
                amplitude=0.0, z_interval=0.2, realizations=3, seed=trial
            )
            inject = int(rng.integers(1, layout.n + 1))
            z = float(rng.uniform(0.1, 2.0))
            diff = float(np.max(np.abs(qsw_run(h, cfg, inject, z) - evolve(h, inject, z))))
            worst = max(worst, diff)
            assert diff <= 1e-12, f"degeneration off by {diff:.2e}"
        h = build_hamiltonian(line_lattice(9, 14.0))
        cfg = DBetaConfig(amplitude=1.0, z_interval=0.1, realizations=16, seed=99)
        a = qsw_run(h, cfg, 5, 0.8, workers=1)
        b = qsw_run(h, cfg, 5, 0.8, workers=8)
        assert np.array_equal(a, b), "qsw_run differs across worker counts"
        sa = qsw_series(h, cfg, 5, (0.0, 0.8), {1, 5, 9}, workers=1)
        sb = qsw_series(h, cfg, 5, (0.0, 0.8), {1, 5, 9}, workers=8)
        assert all(np.array_equal(sa.values[k], sb.values[k]) for k in (1, 5, 9))
        return f"20 layouts, worst |qsw-qw| {worst:.1e}; 1 vs 8 workers bit-equal"

    _report(7, "qsw-degeneration-reproducibility", 60.0, check)


def test_08_dbeta_decoherence_variance():
    def check():
        layout = line_lattice(31, 15.0)
        h = build_hamiltonian(layout)
        xs = layout.positions[:, 0]
        z = 3.0
        cfg = DBetaConfig(amplitude=1.2, z_interval=0.1, realizations=100, seed=31)
        noisy = positional_variance(qsw_run(h, cfg, 16, z, workers=4), xs)
        pure = positional_variance(evolve(h, 16, z), xs)
        assert noisy < pure, f"noisy variance {noisy:.1f} not below pure {pure:.1f}"
        return f"variance {noisy:.1f} um^2 (noisy) < {pure:.1f} um^2 (pure)"

    _report(8, "dbeta-decoherence-variance", 120.0, check)


def test_09_piecewise_vs_ode_oracle():
    def check():
        layout = scattered_layout(7, seed=1)
        h = build_hamiltonian(layout)
        cfg = DBetaConfig(amplitude=0.4, z_interval=0.1, seed=20260814)
        z, inject, substeps = 0.1, 4, 100
        worst = 0.0
        fasts, slows = [], []
        for r in range(5):
            profile = sample_dbeta_profile(cfg, 7, z_max=z, realization=r)
            fast = evolve_piecewise(h, profile, inject, z)
            state = np.zeros(7, dtype=np.complex128)
            state[inject - 1] = 1.0
            dz = profile.segment_length / substeps
            for seg in range(profile.n_segments):
                a = h.matrix + np.diag(profile.offsets[seg])
                for _ in range(substeps):
                    state = state - 1j * dz * (a @ state)
            p = np.abs(state) ** 2
            slow = p / p.sum()
            tv = total_variation(fast, slow)
            worst = max(worst, tv)
            fasts.append(fast)
            slows.append(slow)
            assert tv <= 1e-4, f"realization {r}: TV {tv:.2e}"
        ens = total_variation(np.mean(fasts, axis=0), np.mean(slows, axis=0))
        assert ens <= 1e-4, f"ensemble TV {ens:.2e}"
        return f"7 guides, dz = interval/100; worst TV {worst:.1e}"

    _report(9, "piecewise-vs-ode-oracle", 30.0, check)


def test_10_format_round_trips(tmp_path):
    def check():
        rng = np.random.default_rng(10)
        for trial in range(25):
            n = int(rng.integers(2, 12))
            layout = WaveguideLayout(
                rng.normal(scale=50.0, size=(n, 2)),
                stochastic_flags=rng.integers(0, 2, n).astype(bool),
            )
            path = tmp_path / "pos.csv"
            write_positions(layout, path)
            back = read_positions(path)
            assert np.array_equal(back.positions, layout.positions)
            assert np.array_equal(back.stochastic_flags, layout.stochastic_flags)

            modes = int(rng.integers(2, 7))
            style = ("reck", "clements")[trial % 2]
            spec = random_parameters(style, modes, seed=int(rng.integers(2**32)))
            path = tmp_path / "par.csv"
            write_parameters(spec.splitters, path)
            assert read_parameters(path, style, modes) == list(spec.splitters)

            u = rng.normal(size=(modes, modes)) + 1j * rng.normal(size=(modes, modes))
            path = tmp_path / "uni.csv"
            write_unitary(u, path)
            assert np.array_equal(read_unitary(path, modes), u)

            photons = int(rng.integers(1, min(3, modes) + 1))
            s = np.zeros(modes, dtype=int)
            s[rng.choice(modes, size=photons, replace=False)] = 1
            mesh_u = compose_mesh(random_parameters(style, modes, seed=trial))
            dist = full_distribution(mesh_u, s, ParticleStatistics.BOSONIC)
            path = tmp_path / "dist.csv"
            write_distribution(dist, path)
            got = read_distribution(path, modes)
            assert got.configurations == dist.configurations
            assert np.array_equal(got.probabilities, dist.probabilities)
        return "100 randomized instances (25 per format), all bit-exact"

    _report(10, "format-round-trips", 10.0, check)


def test_11_cli_end_to_end_scenarios(tmp_path):
    def check():
        runs = 0

        def run(*argv):
            nonlocal runs
            runs += 1
            assert cli.main([str(a) for a in argv]) == 0, f"CLI failed: {argv}"

        out_a = tmp_path / "a"
        run("qw", "--lattice", "21,21,15um,15um", "--inject", 221, "--z", "5cm",
            "--out", out_a)
        probs = read_results(out_a / "results.csv")
        assert probs.shape == (441,)
        assert abs(probs.sum() - 1.0) < 1e-10
        assert (out_a / "manifest.json").exists() and (out_a / "facula.png").exists()

        out_b = tmp_path / "b"
        run("qsw", "--lattice", "5,5,15um,15um", "--inject", 13, "--z", "5mm",
            "--amplitude", 1, "--z-interval", "0.1mm", "--realizations", 50,
            "--seed", 5, "--watch", 1, "--watch", 13, "--z-range", "2mm..5mm",
            "--out", out_b)
        mean = read_results(out_b / "results.csv")
        assert abs(mean.sum() - 1.0) < 1e-10
        series = read_series(out_b / "series.csv")
        assert len(series.z) == 100 and list(series.values) == [1, 13]
        assert all(np.all((v >= 0) & (v <= 1)) for v in series.values.values())
        assert (out_b / "manifest.json").exists()

        out_c = tmp_path / "c"
        spacing = 10.0 * math.sqrt(2.0)
        run("multi", "--lattice", f"9,1,{spacing!r}um,{spacing!r}um",
            "--state", "|100010001>", "--stats", "bosonic", "--z", "10mm",
            "--watch-state", "|000020001>", "--watch-state", "|3,1;5,1;8,1>",
            "--watch-state", "|1,1;8,1;9,1>", "--fixed", "|000010000>",
            "--out", out_c)
        dist = read_distribution(out_c / "distribution.csv", 9)
        assert len(dist.configurations) == math.comb(11, 3)
        assert abs(float(np.sum(dist.probabilities)) - 1.0) < 1e-8
        marginal = read_results(out_c / "marginal.csv")
        assert abs(marginal.sum() - 1.0) < 1e-8
        series = read_series(out_c / "series.csv")
        assert len(series.z) == 100 and len(series.values) == 3
        assert (out_c / "correlation.csv").exists()
        assert (out_c / "manifest.json").exists()

        out_d = tmp_path / "d"
        run("boson", "--style", "reck", "--modes", 12, "--random-seed", 7,
            "--state", "|000000000111>", "--out", out_d)
        dist = read_distribution(out_d / "distribution.csv", 12)
        assert len(dist.configurations) == math.comb(14, 3)
        assert abs(float(np.sum(dist.probabilities)) - 1.0) < 1e-8
        with open(out_d / "parameters.csv", newline="") as fh:
            assert len(list(csv.reader(fh))) == 1 + 66  # header + M(M-1)/2 rows
        assert (out_d / "unitary.csv").exists() and (out_d / "manifest.json").exists()

        return f"{runs} scenario runs, outputs normalized, manifests written"

    _report(11, "cli-end-to-end-scenarios", 300.0, check)
