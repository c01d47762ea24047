"""Stateless HTTP/JSON facade over the simulation modules.

All quantities on the wire are plain JSON numbers; field names carry
the canonical unit (positions in um, z in cm, detuning amplitude in
1/mm, segment length in mm). Distributions are state-string keyed
maps, series are a z array plus per-key arrays, rasters are base64
little-endian float64 grids.

Error mapping: malformed bodies are 400, domain violations are 422
with the module's machine-readable code, size limits are 413. Long
computations are cut off by a server-side budget and surface as a 422
"budget-exceeded".
"""

from __future__ import annotations

import base64
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field, model_validator

from . import __version__
from .errors import SimulationError
from .fock import (
    ParticleStatistics,
    format_state,
    full_distribution,
    parse_state,
    single_photon_marginal,
    state_probability_series,
    two_particle_correlation,
)
from .lattice import WaveguideLayout, build_hamiltonian
from .mesh import (
    boson_sampling_distribution,
    check_unitary,
    compose_mesh,
    mesh_layout,
    random_parameters,
    spec_from_parameters,
)
from .propagator import QUICK_RESOLUTION, evolve, facula_raster, unitary_propagator
from .stochastic import DBetaConfig, qsw_run, qsw_series

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class GatewayLimits:
    """Size and time guards; exceeding a size limit is a 413."""

    max_nodes: int = 1024
    max_modes: int = 16
    max_photons: int = 5
    budget_seconds: float = 30.0


class SizeLimitExceeded(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


# -- request bodies ------------------------------------------------------

class LayoutBody(BaseModel):
    positions: list[tuple[float, float]] = Field(min_length=1)
    stochastic_flags: list[bool] | None = None


class QwBody(BaseModel):
    layout: LayoutBody
    inject: int
    z_cm: float
    sigma_um: float | None = None
    resolution: tuple[int, int] = QUICK_RESOLUTION


class DBetaBody(BaseModel):
    amplitude_per_mm: float
    z_interval_mm: float
    realizations: int = 50
    seed: int = 0


class QswBody(BaseModel):
    layout: LayoutBody
    inject: int
    z_cm: float
    dbeta: DBetaBody
    watch: list[int] | None = None
    z_range_cm: tuple[float, float] | None = None


class MultiParticleBody(BaseModel):
    layout: LayoutBody
    state: str
    statistics: Literal["bosonic", "fermionic", "distinguishable"]
    distinguishable_rule: Literal["mixed", "classical"] = "mixed"
    z_cm: float
    watch_states: list[str] = []
    fixed: str | None = None
    perspective: Literal[
        "all", "distribution", "correlation", "marginal", "series"
    ] = "all"


class ComplexMatrixBody(BaseModel):
    real: list[list[float]]
    imag: list[list[float]]

    def to_array(self) -> np.ndarray:
        re, im = np.asarray(self.real, dtype=np.float64), np.asarray(
            self.imag, dtype=np.float64
        )
        if re.ndim != 2 or re.shape != im.shape:
            raise SimulationError(
                "real and imag parts must be equal-shaped 2-d arrays"
            )
        return re + 1j * im


class SplitterBody(BaseModel):
    order: int
    theta: float
    phi: float


class BosonSamplingBody(BaseModel):
    modes: int
    state: str
    style: Literal["reck", "clements"] = "reck"
    parameters: list[SplitterBody] | None = None
    random_seed: int | None = None
    unitary: ComplexMatrixBody | None = None

    @model_validator(mode="after")
    def _one_source(self):
        given = [
            x is not None for x in (self.parameters, self.random_seed, self.unitary)
        ]
        if sum(given) != 1:
            raise ValueError(
                "exactly one of parameters, random_seed, unitary is required"
            )
        return self


class ValidateUnitaryBody(BaseModel):
    unitary: ComplexMatrixBody
    tol: float = 1e-8


# -- response helpers ----------------------------------------------------

def _layout_of(body: LayoutBody, limits: GatewayLimits) -> WaveguideLayout:
    if len(body.positions) > limits.max_nodes:
        raise SizeLimitExceeded(
            f"{len(body.positions)} nodes exceeds the limit of {limits.max_nodes}"
        )
    flags = None if body.stochastic_flags is None else np.asarray(
        body.stochastic_flags, dtype=bool
    )
    return WaveguideLayout(np.asarray(body.positions, dtype=np.float64), flags)


def _node_keyed(probabilities: np.ndarray) -> dict[str, float]:
    """Single-photon distribution keyed by sparse state strings |label,1>."""
    return {f"|{j + 1},1>": float(p) for j, p in enumerate(probabilities)}


def _series_payload(series) -> dict:
    return {
        "z_cm": [float(z) for z in series.z],
        "values": {str(k): [float(p) for p in v] for k, v in series.values.items()},
    }


def _raster_payload(raster) -> dict:
    grid = np.ascontiguousarray(raster.grid, dtype="<f8")
    return {
        "grid_b64": base64.b64encode(grid.tobytes()).decode("ascii"),
        "dtype": "<f8",
        "shape": list(grid.shape),
        "extent_um": [float(e) for e in raster.extent],
        "sigma_um": float(raster.sigma),
    }


def _matrix_payload(u: np.ndarray) -> dict:
    return {
        "real": [[float(c.real) for c in row] for row in u],
        "imag": [[float(c.imag) for c in row] for row in u],
    }


def _respond(seed, **payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "seed": seed, **payload}


def create_app(
    limits: GatewayLimits = GatewayLimits(),
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(
        title="photonwalk gateway",
        version=__version__,
        description=__doc__,
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def deadline() -> float:
        return time.monotonic() + limits.budget_seconds

    @app.exception_handler(RequestValidationError)
    async def schema_violation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": "schema-violation",
                "detail": jsonable_encoder(exc.errors()),
            },
        )

    @app.exception_handler(SimulationError)
    async def domain_violation(request: Request, exc: SimulationError):
        return JSONResponse(
            status_code=422, content={"error": exc.code, "message": str(exc)}
        )

    @app.exception_handler(SizeLimitExceeded)
    async def size_limit(request: Request, exc: SizeLimitExceeded):
        return JSONResponse(
            status_code=413, content={"error": "size-limit", "message": exc.message}
        )

    @app.post("/api/v1/qw")
    def qw(body: QwBody):
        layout = _layout_of(body.layout, limits)
        h = build_hamiltonian(layout)
        dist = evolve(h, body.inject, body.z_cm)
        raster = facula_raster(
            layout, dist, resolution=body.resolution, sigma=body.sigma_um
        )
        return _respond(
            None,
            distribution=_node_keyed(dist),
            raster=_raster_payload(raster),
        )

    @app.post("/api/v1/qsw")
    def qsw(body: QswBody):
        layout = _layout_of(body.layout, limits)
        h = build_hamiltonian(layout)
        cfg = DBetaConfig(
            amplitude=body.dbeta.amplitude_per_mm,
            z_interval=body.dbeta.z_interval_mm,
            realizations=body.dbeta.realizations,
            seed=body.dbeta.seed,
            stochastic_flags=layout.stochastic_flags,
        )
        watch = body.watch if body.watch else [body.inject]
        z_range = body.z_range_cm if body.z_range_cm else (0.0, body.z_cm)
        stop = deadline()
        mean = qsw_run(h, cfg, body.inject, body.z_cm, deadline=stop)
        series = qsw_series(h, cfg, body.inject, z_range, watch, deadline=stop)
        return _respond(
            body.dbeta.seed,
            distribution=_node_keyed(mean),
            series=_series_payload(series),
        )

    @app.post("/api/v1/multiparticle")
    def multiparticle(body: MultiParticleBody):
        layout = _layout_of(body.layout, limits)
        state = parse_state(body.state, layout.n)
        if sum(state) > limits.max_photons:
            raise SizeLimitExceeded(
                f"{sum(state)} photons exceeds the limit of {limits.max_photons}"
            )
        stats = ParticleStatistics.parse(body.statistics)
        h = build_hamiltonian(layout)
        u = unitary_propagator(h, body.z_cm)
        photons = sum(state)
        views = (
            ["distribution", "correlation", "marginal", "series"]
            if body.perspective == "all"
            else [body.perspective]
        )
        stop = deadline()
        payload: dict = {
            "distribution": None,
            "correlation": None,
            "marginal": None,
            "series": None,
        }
        if "distribution" in views:
            dist = full_distribution(
                u, state, stats,
                distinguishable_rule=body.distinguishable_rule,
                deadline=stop,
            )
            payload["distribution"] = dist.as_dict()
        if "correlation" in views:
            fixed = parse_state(body.fixed, layout.n) if body.fixed else None
            if photons == 2 or (photons > 2 and fixed is not None):
                gamma = two_particle_correlation(u, state, stats, fixed=fixed)
                payload["correlation"] = [[float(c) for c in row] for row in gamma]
            elif body.perspective == "correlation":
                raise SimulationError(
                    "correlation view needs two photons, or fixed for the other N-2"
                )
        if "marginal" in views:
            payload["marginal"] = [
                float(p) for p in single_photon_marginal(u, state, stats)
            ]
        if "series" in views:
            if body.watch_states:
                series = state_probability_series(
                    h, state, stats, body.watch_states, (0.0, body.z_cm),
                    deadline=stop,
                )
                payload["series"] = _series_payload(series)
            elif body.perspective == "series":
                raise SimulationError("series view needs at least one watch state")
        return _respond(None, input_state=format_state(state), **payload)

    @app.post("/api/v1/bosonsampling")
    def bosonsampling(body: BosonSamplingBody):
        if body.modes > limits.max_modes:
            raise SizeLimitExceeded(
                f"{body.modes} modes exceeds the limit of {limits.max_modes}"
            )
        state = parse_state(body.state, body.modes)
        if sum(state) > limits.max_photons:
            raise SizeLimitExceeded(
                f"{sum(state)} photons exceeds the limit of {limits.max_photons}"
            )
        if body.unitary is not None:
            source = body.unitary.to_array()
            if source.shape != (body.modes, body.modes):
                raise SimulationError(
                    f"unitary shape {source.shape} does not match {body.modes} modes"
                )
            u = source
        elif body.parameters is not None:
            spec = spec_from_parameters(
                body.style,
                body.modes,
                [(p.order, p.theta, p.phi) for p in body.parameters],
            )
            source, u = spec, compose_mesh(spec)
        else:
            spec = random_parameters(body.style, body.modes, body.random_seed)
            source, u = spec, compose_mesh(spec)
        dist = boson_sampling_distribution(source, state, deadline=deadline())
        return _respond(
            body.random_seed,
            distribution=dist.as_dict(),
            unitary=_matrix_payload(u),
        )

    @app.post("/api/v1/validate/unitary")
    def validate_unitary(body: ValidateUnitaryBody):
        report = check_unitary(body.unitary.to_array(), tol=body.tol)
        return _respond(
            None,
            ok=report.ok,
            max_deviation=report.max_deviation,
            tol=report.tol,
        )

    @app.get("/api/v1/mesh/layout")
    def mesh_board(style: Literal["reck", "clements"], modes: int):
        if modes > limits.max_modes:
            raise SizeLimitExceeded(
                f"{modes} modes exceeds the limit of {limits.max_modes}"
            )
        sites = mesh_layout(style, modes)
        return _respond(
            None,
            style=style,
            modes=modes,
            sites=[
                {"order": s.order, "m": s.m, "n": s.n, "x": s.x, "y": s.y}
                for s in sites
            ],
        )

    @app.get("/api/v1/schema")
    def schema():
        bodies = {
            "qw": QwBody,
            "qsw": QswBody,
            "multiparticle": MultiParticleBody,
            "bosonsampling": BosonSamplingBody,
            "validate_unitary": ValidateUnitaryBody,
        }
        return {
            "schema_version": SCHEMA_VERSION,
            "package_version": __version__,
            "limits": {
                "max_nodes": limits.max_nodes,
                "max_modes": limits.max_modes,
                "max_photons": limits.max_photons,
                "budget_seconds": limits.budget_seconds,
            },
            "requests": {
                name: model.model_json_schema() for name, model in bodies.items()
            },
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def main() -> None:
    """Serve the gateway; UI bundle directory via PHOTONWALK_UI_DIR."""
    import os

    import uvicorn

    static = os.environ.get("PHOTONWALK_UI_DIR")
    app = create_app(static_dir=static)
    uvicorn.run(app, host=os.environ.get("HOST", "127.0.0.1"),
                port=int(os.environ.get("PORT", "8077")))


if __name__ == "__main__":
    main()
