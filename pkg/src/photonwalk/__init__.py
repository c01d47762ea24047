"""Photonic lattice quantum-walk and boson-sampling simulation engine.

Submodules:

* ``lattice``    waveguide geometry and tight-binding Hamiltonians
* ``propagator`` single-photon evolution, probability series, facula rasters
* ``stochastic`` piecewise-random propagation-constant walks (ensemble averaged)
* ``permanent``  permanent/determinant kernels and the benchmark harness
* ``fock``       multi-photon configurations, state strings, transition statistics
* ``mesh``       beam-splitter meshes (triangular/rectangular) and composition
* ``formats``    CSV grammars for positions, parameters, unitaries and results
* ``cli``        batch command-line front end
* ``gateway``    stateless HTTP/JSON facade (FastAPI app)
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    FileFormatError,
    LayoutError,
    PauliExclusionError,
    PhotonNumberError,
    SimulationError,
    StateFormatError,
    UnitarityError,
)
from .lattice import (
    CouplingModel,
    DEFAULT_COUPLING,
    Hamiltonian,
    WaveguideLayout,
    build_hamiltonian,
    coupling_coefficient,
    line_lattice,
    rectangular_lattice,
)
from .propagator import (
    FaculaRaster,
    ProbabilitySeries,
    SpectralPropagator,
    evolve,
    facula_raster,
    probability_series,
    unitary_propagator,
)
from .stochastic import (
    DBetaConfig,
    DBetaProfile,
    evolve_piecewise,
    qsw_run,
    qsw_series,
    sample_dbeta_profile,
)
from .permanent import (
    PermanentResult,
    bench_permanents,
    determinant,
    dispatch_algorithm,
    permanent,
    permanent_with_stats,
)
from .fock import (
    OutputDistribution,
    ParticleStatistics,
    configuration_count,
    enumerate_configurations,
    format_state,
    full_distribution,
    parse_state,
    single_photon_marginal,
    state_probability_series,
    transition_probability,
    two_particle_correlation,
)
from .mesh import (
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
