"""CSV grammars for every file the simulator reads or writes.

All tables are UTF-8, comma-separated, with an optional header row that
is auto-detected (a first row with any non-numeric cell). Numbers are
serialized with shortest-exact decimal representation, so every
writer/reader pair round-trips binary64 values bit-exactly.
"""

from __future__ import annotations

import csv
import math
from typing import Any, Sequence

import numpy as np

from .errors import FileFormatError
from .fock import OutputDistribution, format_state, parse_state
from .lattice import WaveguideLayout
from .mesh import BeamSplitterParam, spec_from_parameters
from .propagator import FaculaRaster, ProbabilitySeries

__all__ = [
    "read_distribution",
    "read_parameters",
    "read_positions",
    "read_results",
    "read_series",
    "read_unitary",
    "write_distribution",
    "write_hamiltonian",
    "write_parameters",
    "write_positions",
    "write_raster",
    "write_results",
    "write_series",
    "write_unitary",
]


def _fmt(x) -> str:
    # repr of a python float is the shortest decimal that parses back
    # to the same bits; numpy scalars must be unwrapped first
    return repr(float(x))


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _read_rows(path) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return [row for row in csv.reader(fh)]
    except OSError as exc:
        raise FileFormatError(f"cannot read file: {exc}", path=path) from None


def _write_rows(path, rows) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    except OSError as exc:
        raise FileFormatError(f"cannot write file: {exc}", path=path) from None


def _strip_header(rows, path):
    """Split an optional header off a table.

    Returns (header or None, data rows, row number of the first data
    row). A header is any first row containing a cell that does not
    parse as a number.
    """
    body = [(i + 1, row) for i, row in enumerate(rows) if row]
    if not body:
        raise FileFormatError("file contains no data rows", path=path)
    first = body[0][1]
    if all(_is_number(cell) for cell in first):
        return None, body
    return [cell.strip().lower() for cell in first], body[1:]


def _cell_float(text: str, path, row: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise FileFormatError(
            f"expected a number, found {text!r}", path=path, row=row, column=column
        ) from None
    if not math.isfinite(value):
        raise FileFormatError(
            f"expected a finite number, found {text!r}",
            path=path,
            row=row,
            column=column,
        )
    return value


def _cell_int(text: str, path, row: int, column: int) -> int:
    value = _cell_float(text, path, row, column)
    if value != int(value):
        raise FileFormatError(
            f"expected an integer, found {text!r}", path=path, row=row, column=column
        )
    return int(value)


def _expect_columns(row, count, path, row_number):
    if len(row) != count:
        raise FileFormatError(
            f"expected {count} columns, found {len(row)}", path=path, row=row_number
        )


# -- positions ---------------------------------------------------------

def write_positions(layout: WaveguideLayout, path) -> None:
    """Node table: label, x, y plus a stochastic column when any flag is off."""
    flagged = not bool(np.all(layout.stochastic_flags))
    header = ["label", "x", "y"] + (["stochastic"] if flagged else [])
    rows: list[list[str]] = [header]
    for i, (x, y) in enumerate(layout.positions):
        row = [str(i + 1), _fmt(x), _fmt(y)]
        if flagged:
            row.append(str(int(layout.stochastic_flags[i])))
        rows.append(row)
    _write_rows(path, rows)


def read_positions(path) -> WaveguideLayout:
    _, body = _strip_header(_read_rows(path), path)
    width = len(body[0][1])
    if width not in (3, 4):
        raise FileFormatError(
            f"expected 3 columns (label, x, y), found {width}",
            path=path,
            row=body[0][0],
        )
    labels: list[int] = []
    coords: list[tuple[float, float]] = []
    flags: list[bool] = []
    for row_number, row in body:
        _expect_columns(row, width, path, row_number)
        labels.append(_cell_int(row[0], path, row_number, 1))
        coords.append(
            (
                _cell_float(row[1], path, row_number, 2),
                _cell_float(row[2], path, row_number, 3),
            )
        )
        if width == 4:
            flag = _cell_int(row[3], path, row_number, 4)
            if flag not in (0, 1):
                raise FileFormatError(
                    f"stochastic flag must be 0 or 1, found {row[3]!r}",
                    path=path,
                    row=row_number,
                    column=4,
                )
            flags.append(bool(flag))
    n = len(labels)
    seen: dict[int, int] = {}
    for (row_number, _), label in zip(body, labels):
        if label in seen:
            raise FileFormatError(
                f"duplicate label {label} (first used in row {seen[label]})",
                path=path,
                row=row_number,
                column=1,
            )
        seen[label] = row_number
        if not 1 <= label <= n:
            raise FileFormatError(
                f"label {label} outside 1..{n}", path=path, row=row_number, column=1
            )
    positions = np.zeros((n, 2))
    out_flags = np.ones(n, dtype=bool)
    for label, (x, y) in zip(labels, coords):
        positions[label - 1] = (x, y)
    if width == 4:
        for label, flag in zip(labels, flags):
            out_flags[label - 1] = flag
    return WaveguideLayout(positions, out_flags)


# -- beam-splitter parameters ------------------------------------------

def write_parameters(params: Sequence[BeamSplitterParam], path) -> None:
    """Splitter table: order, theta, phi; one row per splitter."""
    rows: list[list[str]] = [["order", "theta", "phi"]]
    for p in params:
        rows.append([str(p.order), _fmt(p.theta), _fmt(p.phi)])
    _write_rows(path, rows)


def read_parameters(path, style: str, modes: int) -> list[BeamSplitterParam]:
    """Parse an (order, theta, phi) table and bind it to a mesh layout.

    The channel pair each splitter acts on is a property of the chosen
    decomposition style and mode count, so both are required here.
    """
    _, body = _strip_header(_read_rows(path), path)
    triples = []
    for row_number, row in body:
        _expect_columns(row, 3, path, row_number)
        triples.append(
            (
                _cell_int(row[0], path, row_number, 1),
                _cell_float(row[1], path, row_number, 2),
                _cell_float(row[2], path, row_number, 3),
            )
        )
    try:
        spec = spec_from_parameters(style, modes, triples)
    except Exception as exc:
        raise FileFormatError(str(exc), path=path) from None
    return list(spec.splitters)


# -- unitary matrices ---------------------------------------------------

def write_unitary(u, path) -> None:
    """M x 2M table, columns interleaved Re(u[i,0]), Im(u[i,0]), ..."""
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise FileFormatError("unitary table requires a square matrix", path=path)
    rows = []
    for row in u:
        flat: list[str] = []
        for cell in row:
            flat.append(_fmt(cell.real))
            flat.append(_fmt(cell.imag))
        rows.append(flat)
    _write_rows(path, rows)


def read_unitary(path, modes: int) -> np.ndarray:
    """Assemble an M x M complex matrix; unitarity is not checked here."""
    if modes < 1:
        raise FileFormatError("modes must be at least 1", path=path)
    _, body = _strip_header(_read_rows(path), path)
    if len(body) != modes:
        raise FileFormatError(
            f"expected {modes} rows, found {len(body)}", path=path
        )
    out = np.zeros((modes, modes), dtype=np.complex128)
    for i, (row_number, row) in enumerate(body):
        _expect_columns(row, 2 * modes, path, row_number)
        for j in range(modes):
            re = _cell_float(row[2 * j], path, row_number, 2 * j + 1)
            im = _cell_float(row[2 * j + 1], path, row_number, 2 * j + 2)
            out[i, j] = complex(re, im)
    return out


# -- distributions, results, series -------------------------------------

def write_distribution(dist: OutputDistribution, path) -> None:
    """State table: canonical state string, probability; enumeration order."""
    rows: list[list[str]] = [["state", "probability"]]
    for c, p in zip(dist.configurations, dist.probabilities):
        rows.append([format_state(c), _fmt(p)])
    _write_rows(path, rows)


def read_distribution(path, modes: int) -> OutputDistribution:
    _, body = _strip_header(_read_rows(path), path)
    configurations = []
    probabilities = []
    for row_number, row in body:
        _expect_columns(row, 2, path, row_number)
        try:
            configurations.append(parse_state(row[0], modes))
        except Exception as exc:
            raise FileFormatError(
                str(exc), path=path, row=row_number, column=1
            ) from None
        probabilities.append(_cell_float(row[1], path, row_number, 2))
    return OutputDistribution(
        configurations=tuple(configurations),
        probabilities=np.array(probabilities),
    )


def write_results(probabilities, path) -> None:
    """Per-node probability column, row i holding node i+1; no header."""
    values = np.asarray(probabilities, dtype=np.float64)
    if values.ndim != 1:
        raise FileFormatError("results table requires a 1-d vector", path=path)
    _write_rows(path, [[_fmt(p)] for p in values])


def read_results(path) -> np.ndarray:
    _, body = _strip_header(_read_rows(path), path)
    out = []
    for row_number, row in body:
        _expect_columns(row, 1, path, row_number)
        out.append(_cell_float(row[0], path, row_number, 1))
    return np.array(out)


def write_series(series: ProbabilitySeries, path) -> None:
    """z column plus one probability column per watched key."""
    keys = list(series.values.keys())
    rows: list[list[str]] = [["z"] + [str(k) for k in keys]]
    for i, z in enumerate(series.z):
        rows.append([_fmt(z)] + [_fmt(series.values[k][i]) for k in keys])
    _write_rows(path, rows)


def read_series(path) -> ProbabilitySeries:
    header, body = _strip_header(_read_rows(path), path)
    if header is None or not header or header[0] != "z":
        raise FileFormatError(
            "series table requires a header starting with 'z'", path=path, row=1
        )
    raw_keys = header[1:]
    if not raw_keys:
        raise FileFormatError("series table has no value columns", path=path, row=1)
    keys: list[Any] = [int(k) if k.lstrip("-").isdigit() else k for k in raw_keys]
    zs = []
    columns: list[list[float]] = [[] for _ in keys]
    for row_number, row in body:
        _expect_columns(row, 1 + len(keys), path, row_number)
        zs.append(_cell_float(row[0], path, row_number, 1))
        for j in range(len(keys)):
            columns[j].append(_cell_float(row[j + 1], path, row_number, j + 2))
    return ProbabilitySeries(
        z=np.array(zs), values={k: np.array(col) for k, col in zip(keys, columns)}
    )


# -- auxiliary exports ---------------------------------------------------

def write_hamiltonian(matrix, path) -> None:
    """Real n x n coupling-matrix table (1/cm)."""
    m = np.asarray(getattr(matrix, "matrix", matrix))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise FileFormatError("Hamiltonian table requires a square matrix", path=path)
    _write_rows(path, [[_fmt(v) for v in row] for row in np.real(m)])


def write_raster(raster: FaculaRaster, path) -> None:
    """Intensity grid as plain rows; row 0 holds the bottom (y_min) line."""
    _write_rows(path, [[_fmt(v) for v in row] for row in raster.grid])
