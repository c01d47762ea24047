"""Batch command line: one subcommand per simulation mode.

Every length on the command line carries an explicit unit suffix (um,
mm, cm); bare numbers are rejected, since mixed units are the easiest
way to ruin a run. Each run writes a manifest.json alongside its
outputs recording the exact argument vector; ``photonwalk rerun
manifest.json`` replays it bit-exactly.

Exit codes: 0 success, 2 usage error, 3 input-format error,
4 numerical or domain violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__, formats
from .errors import FileFormatError, SimulationError
from .fock import (
    ParticleStatistics,
    full_distribution,
    parse_state,
    single_photon_marginal,
    state_probability_series,
    two_particle_correlation,
)
from .lattice import build_hamiltonian, rectangular_lattice
from .mesh import (
    STYLES,
    boson_sampling_distribution,
    compose_mesh,
    random_parameters,
    spec_from_parameters,
)
from .permanent import bench_permanents
from .propagator import (
    PLOT_RESOLUTION,
    QUICK_RESOLUTION,
    evolve,
    facula_raster,
    unitary_propagator,
)
from .stochastic import DBetaConfig, qsw_run, qsw_series

FORMAT_VERSION = "1"

_UNIT_UM = {"um": 1, "mm": 1_000, "cm": 10_000}
_LENGTH_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(um|mm|cm)\s*$")


def parse_length(text: str, target: str) -> float:
    """'15um' -> 15.0 (target 'um'); unit suffix is mandatory."""
    m = _LENGTH_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"length {text!r} needs a unit suffix: um, mm, or cm (e.g. 15um)"
        )
    value = float(m.group(1))
    unit, goal = _UNIT_UM[m.group(2)], _UNIT_UM[target]
    # scale by an exact integer so decimal inputs survive unchanged
    return value * (unit // goal) if unit >= goal else value / (goal // unit)


def _length_type(target: str):
    return lambda text: parse_length(text, target)


def _z_range_type(text: str) -> tuple[float, float]:
    parts = text.split("..")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"range {text!r} must look like 2mm..5mm"
        )
    return parse_length(parts[0], "cm"), parse_length(parts[1], "cm")


def _n_range_type(text: str) -> range:
    m = re.match(r"^\s*(\d+)\.\.(\d+)\s*$", text)
    if not m:
        raise argparse.ArgumentTypeError(f"range {text!r} must look like 2..16")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"range {text!r} is empty or invalid")
    return range(lo, hi + 1)


def _lattice_type(text: str) -> tuple[int, int, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"lattice {text!r} must look like nx,ny,dx,dy (e.g. 21,21,15um,15um)"
        )
    try:
        nx, ny = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"lattice counts in {text!r} must be integers"
        ) from None
    return nx, ny, parse_length(parts[2], "um"), parse_length(parts[3], "um")


def _resolution_type(text: str) -> tuple[int, int]:
    if text == "fine":
        return PLOT_RESOLUTION
    if text == "quick":
        return QUICK_RESOLUTION
    m = re.match(r"^(\d+)x(\d+)$", text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"resolution {text!r} must be 'fine', 'quick', or WIDTHxHEIGHT"
        )
    return int(m.group(1)), int(m.group(2))


def _add_layout_flags(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--positions", type=Path, help="node table CSV (label, x, y)")
    group.add_argument(
        "--lattice",
        type=_lattice_type,
        metavar="NX,NY,DX,DY",
        help="rectangular lattice, spacings with unit suffix: 21,21,15um,15um",
    )


def _resolve_layout(args):
    if args.positions is not None:
        return formats.read_positions(args.positions), {"positions": str(Path(args.positions).resolve())}
    nx, ny, dx, dy = args.lattice
    return rectangular_lattice(nx, ny, dx, dy), {}


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_manifest(out, subcommand, argv, inputs, parameters, seed, outputs):
    manifest = {
        "subcommand": subcommand,
        "argv": list(argv),
        "package_version": __version__,
        "format_version": FORMAT_VERSION,
        "inputs": inputs,
        "parameters": parameters,
        "seed": seed,
        "outputs": sorted(outputs),
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def _save_png(path, raster, colormap: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    from matplotlib import image as mpimage

    mpimage.imsave(path, raster.grid, origin="lower", cmap=colormap)


def cmd_qw(args, argv) -> int:
    layout, inputs = _resolve_layout(args)
    out = _out_dir(args)
    h = build_hamiltonian(layout)
    dist = evolve(h, args.inject, args.z)
    raster = facula_raster(layout, dist, resolution=args.resolution, sigma=args.sigma)

    formats.write_results(dist, out / "results.csv")
    formats.write_hamiltonian(h, out / "hamiltonian.csv")
    formats.write_positions(layout, out / "positions.csv")
    formats.write_raster(raster, out / "facula.csv")
    _save_png(out / "facula.png", raster, args.colormap)
    _write_manifest(
        out,
        "qw",
        argv,
        inputs,
        {
            "inject": args.inject,
            "z_cm": args.z,
            "sigma_um": args.sigma,
            "resolution": list(args.resolution),
            "colormap": args.colormap,
            "raster_extent_um": list(raster.extent),
        },
        None,
        ["results.csv", "hamiltonian.csv", "positions.csv", "facula.csv", "facula.png"],
    )
    return 0


def cmd_qsw(args, argv) -> int:
    layout, inputs = _resolve_layout(args)
    out = _out_dir(args)
    h = build_hamiltonian(layout)
    cfg = DBetaConfig(
        amplitude=args.amplitude,
        z_interval=args.z_interval,
        realizations=args.realizations,
        seed=args.seed,
        stochastic_flags=layout.stochastic_flags,
    )
    watch = args.watch if args.watch else [args.inject]
    z_range = args.z_range if args.z_range else (0.0, args.z)

    mean = qsw_run(h, cfg, args.inject, args.z, workers=args.workers)
    series = qsw_series(h, cfg, args.inject, z_range, watch, workers=args.workers)

    formats.write_results(mean, out / "results.csv")
    formats.write_series(series, out / "series.csv")
    formats.write_positions(layout, out / "positions.csv")
    _write_manifest(
        out,
        "qsw",
        argv,
        inputs,
        {
            "inject": args.inject,
            "z_cm": args.z,
            "amplitude_per_mm": args.amplitude,
            "z_interval_mm": args.z_interval,
            "realizations": args.realizations,
            "watch": sorted(set(watch)),
            "z_range_cm": list(z_range),
            "workers": args.workers,
        },
        args.seed,
        ["results.csv", "series.csv", "positions.csv"],
    )
    return 0


def cmd_multi(args, argv) -> int:
    layout, inputs = _resolve_layout(args)
    out = _out_dir(args)
    h = build_hamiltonian(layout)
    state = parse_state(args.state, layout.n)
    stats = ParticleStatistics.parse(args.stats)
    photons = sum(state)
    u = unitary_propagator(h, args.z)
    views = (
        ["distribution", "correlation", "marginal", "series"]
        if args.perspective == "all"
        else [args.perspective]
    )
    outputs = []

    if "distribution" in views:
        dist = full_distribution(u, state, stats, distinguishable_rule=args.rule)
        formats.write_distribution(dist, out / "distribution.csv")
        outputs.append("distribution.csv")
    if "correlation" in views:
        fixed = parse_state(args.fixed, layout.n) if args.fixed else None
        if photons == 2 or (photons > 2 and fixed is not None):
            gamma = two_particle_correlation(u, state, stats, fixed=fixed)
            formats.write_hamiltonian(gamma, out / "correlation.csv")
            outputs.append("correlation.csv")
        elif args.perspective == "correlation":
            raise SimulationError(
                "correlation view needs two photons, or --fixed for the other N-2"
            )
        else:
            print(
                "note: skipping correlation.csv (needs two photons, or --fixed)",
                file=sys.stderr,
            )
    if "marginal" in views:
        formats.write_results(single_photon_marginal(u, state, stats), out / "marginal.csv")
        outputs.append("marginal.csv")
    if "series" in views:
        if args.watch_state:
            series = state_probability_series(h, state, stats, args.watch_state, (0.0, args.z))
            formats.write_series(series, out / "series.csv")
            outputs.append("series.csv")
        elif args.perspective == "series":
            raise SimulationError("series view needs at least one --watch-state")
        else:
            print("note: skipping series.csv (no --watch-state given)", file=sys.stderr)

    formats.write_positions(layout, out / "positions.csv")
    outputs.append("positions.csv")
    _write_manifest(
        out,
        "multi",
        argv,
        inputs,
        {
            "state": args.state,
            "statistics": stats.value,
            "distinguishable_rule": args.rule,
            "z_cm": args.z,
            "watch_states": list(args.watch_state),
            "fixed": args.fixed,
            "perspective": args.perspective,
        },
        None,
        outputs,
    )
    return 0


def cmd_boson(args, argv) -> int:
    out = _out_dir(args)
    inputs = {}
    spec = None
    if args.unitary is not None:
        u = formats.read_unitary(args.unitary, args.modes)
        inputs["unitary"] = str(Path(args.unitary).resolve())
        source = u
    elif args.params is not None:
        splitters = formats.read_parameters(args.params, args.style, args.modes)
        spec = spec_from_parameters(
            args.style, args.modes, [(p.order, p.theta, p.phi) for p in splitters]
        )
        inputs["params"] = str(Path(args.params).resolve())
        source = spec
    else:
        spec = random_parameters(args.style, args.modes, args.random_seed)
        source = spec

    state = parse_state(args.state, args.modes)
    dist = boson_sampling_distribution(source, state)
    u = compose_mesh(spec) if spec is not None else source

    formats.write_distribution(dist, out / "distribution.csv")
    formats.write_unitary(u, out / "unitary.csv")
    outputs = ["distribution.csv", "unitary.csv"]
    if spec is not None:
        formats.write_parameters(spec.splitters, out / "parameters.csv")
        outputs.append("parameters.csv")
    _write_manifest(
        out,
        "boson",
        argv,
        inputs,
        {
            "style": args.style if spec is not None else None,
            "modes": args.modes,
            "state": args.state,
        },
        args.random_seed,
        outputs,
    )
    return 0


def cmd_bench_permanent(args, argv) -> int:
    out = _out_dir(args)
    report = bench_permanents(args.n_range, trials=args.trials, seed=args.seed)
    rows = [["algorithm", "n", "median_ns", "relative_error_vs_dispatcher"]]
    for algorithm, n, median_ns, err in report.rows():
        rows.append([algorithm, str(n), str(median_ns), repr(float(err))])
    with open(out / "bench.csv", "w", newline="", encoding="utf-8") as fh:
        fh.write("\n".join(",".join(row) for row in rows) + "\n")
    _write_manifest(
        out,
        "bench-permanent",
        argv,
        {},
        {"n_range": [args.n_range.start, args.n_range.stop - 1], "trials": args.trials},
        args.seed,
        ["bench.csv"],
    )
    return 0


def cmd_rerun(args, argv) -> int:
    try:
        manifest = json.loads(Path(args.manifest).read_text())
        replay = manifest["argv"]
    except (OSError, ValueError, KeyError) as exc:
        raise FileFormatError(f"cannot replay manifest: {exc}", path=args.manifest) from None
    if not isinstance(replay, list) or not replay or replay[0] == "rerun":
        raise FileFormatError("manifest argv is not replayable", path=args.manifest)
    return main([str(a) for a in replay])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonwalk",
        description="Photonic waveguide quantum walk and boson sampling simulator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    qw = sub.add_parser("qw", help="single-photon quantum walk over a waveguide layout")
    _add_layout_flags(qw)
    qw.add_argument("--inject", type=int, required=True, help="injection node label")
    qw.add_argument("--z", type=_length_type("cm"), required=True, metavar="LEN",
                    help="propagation distance with unit suffix, e.g. 5cm")
    qw.add_argument("--sigma", type=_length_type("um"), default=None, metavar="LEN",
                    help="facula spot width (default 0.35 x min spacing)")
    qw.add_argument("--resolution", type=_resolution_type, default=PLOT_RESOLUTION,
                    help="raster grid: fine (500x500), quick (100x100), or WIDTHxHEIGHT")
    qw.add_argument("--colormap", default="inferno", help="matplotlib colormap for facula.png")
    qw.add_argument("--out", required=True, help="output directory")
    qw.set_defaults(func=cmd_qw)

    qsw = sub.add_parser("qsw", help="quantum stochastic walk with segmented detuning noise")
    _add_layout_flags(qsw)
    qsw.add_argument("--inject", type=int, required=True)
    qsw.add_argument("--z", type=_length_type("cm"), required=True, metavar="LEN")
    qsw.add_argument("--amplitude", type=float, required=True,
                     help="detuning amplitude in 1/mm; useful range 0 to about 1.2 mm^-1")
    qsw.add_argument("--z-interval", type=_length_type("mm"), required=True, metavar="LEN",
                     help="segment length with unit suffix, e.g. 0.1mm")
    qsw.add_argument("--realizations", type=int, default=50, help="ensemble size")
    qsw.add_argument("--seed", type=int, default=0, help="ensemble RNG seed")
    qsw.add_argument("--watch", type=int, action="append", default=[],
                     help="node label for the series output; repeatable (default: inject)")
    qsw.add_argument("--z-range", type=_z_range_type, default=None, metavar="A..B",
                     help="series window, e.g. 2mm..5mm (default 0..z)")
    qsw.add_argument("--workers", type=int, default=1, help="worker threads")
    qsw.add_argument("--out", required=True)
    qsw.set_defaults(func=cmd_qsw)

    multi = sub.add_parser("multi", help="multi-photon statistics on a waveguide layout")
    _add_layout_flags(multi)
    multi.add_argument("--state", required=True,
                       help="input Fock state, e.g. \"|100010001>\" or \"|1,1;5,1;9,1>\"")
    multi.add_argument("--stats", required=True,
                       choices=["bosonic", "fermionic", "distinguishable"])
    multi.add_argument("--rule", default="mixed", choices=["mixed", "classical"],
                       help="distinguishable-statistics rule")
    multi.add_argument("--z", type=_length_type("cm"), required=True, metavar="LEN")
    multi.add_argument("--watch-state", action="append", default=[],
                       help="output state tracked along z; repeatable")
    multi.add_argument("--fixed", default=None,
                       help="positions of the other N-2 photons in the correlation view")
    multi.add_argument("--perspective", default="all",
                       choices=["all", "distribution", "correlation", "marginal", "series"])
    multi.add_argument("--out", required=True)
    multi.set_defaults(func=cmd_multi)

    boson = sub.add_parser("boson", help="boson sampling over a beam-splitter mesh")
    boson.add_argument("--style", default="reck", choices=list(STYLES))
    boson.add_argument("--modes", type=int, required=True)
    source = boson.add_mutually_exclusive_group(required=True)
    source.add_argument("--params", type=Path, help="splitter table CSV (order, theta, phi)")
    source.add_argument("--random-seed", type=int, help="draw random splitter parameters")
    source.add_argument("--unitary", type=Path, help="M x 2M CSV of a unitary matrix")
    boson.add_argument("--state", required=True, help="input Fock state, e.g. \"|011>\"")
    boson.add_argument("--out", required=True)
    boson.set_defaults(func=cmd_boson)

    bench = sub.add_parser("bench-permanent", help="time the permanent algorithms")
    bench.add_argument("--n-range", type=_n_range_type, default=range(2, 17), metavar="A..B")
    bench.add_argument("--trials", type=int, default=5)
    bench.add_argument("--seed", type=int, default=2026)
    bench.add_argument("--out", required=True)
    bench.set_defaults(func=cmd_bench_permanent)

    rerun = sub.add_parser("rerun", help="replay a saved manifest.json")
    rerun.add_argument("manifest", type=Path)
    rerun.set_defaults(func=cmd_rerun)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
