"""Collective spontaneous emission in the q-deformed (f-deformed) Dicke model."""

from .deformation import (
    DeformationError,
    DeformationFunction,
    DeformationKind,
    DeformationSpec,
    log_q_factor,
    make_deformation,
    q_factor,
    register_deformation,
)
from .model import (
    LadderHamiltonian,
    ModelParams,
    ParameterError,
    StateVector,
    build_hamiltonian,
    coupling_elements,
    eigenfrequencies,
)
from .analytic import (
    FrequencySpectrum,
    frequencies,
    omega_pm_s3,
    omega_s1,
    omega_s2,
    solve,
    solve_s1,
    solve_s2,
    solve_s3,
)
from .propagator import Method, TimeGrid, Trajectory, evolve, initial_state, propagate
from .observables import (
    BeatReport,
    Label,
    ObservableSeries,
    atomic_inversion_full,
    atomic_inversion_group,
    beat_analysis,
    interaction_energy,
    oscillation_extrema,
    photon_number,
)

__version__ = "0.1.0"
