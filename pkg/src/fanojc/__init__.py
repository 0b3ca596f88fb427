"""Photon statistics of a coherently driven atom-cavity system whose atom and
cavity decay channels interfere through a shared radiation continuum."""

from .analytic import (
    EnhancementReport,
    bic_conditions,
    decomposition_analytic,
    enhancement,
    eta_max,
    g2_analytic,
    g2_closed_form,
    intensity_analytic,
    observables_analytic,
)
from .errors import (
    DimensionOverflowError,
    FanojcError,
    InvalidParameterError,
    RankDeficiencyError,
    SingularPointError,
    UndefinedFanoParameterError,
    ZeroIntensityError,
)
from .lindblad import (
    OracleConfig,
    SteadyState,
    build_liouvillian,
    observables_from_state,
    oracle_observables,
    steady_state,
    steady_state_auto,
)
from .observables import ObservableSet
from .params import DerivedQuantities, SystemParams, derive, load_config, params_from_mapping
from .sweeps import (
    Extremum,
    ExtremumReport,
    SweepAxis,
    SweepResult,
    SweepSpec,
    conventional_dip,
    fano_maximum,
    locate_bic,
    locate_g2_extrema,
    maximize_eta,
    single_excitation_eigenvalues,
    sweep,
)
from .wavefunction import Amplitudes, observables_from_amplitudes, solve_amplitudes

__all__ = [
    "Amplitudes",
    "DerivedQuantities",
    "DimensionOverflowError",
    "EnhancementReport",
    "Extremum",
    "ExtremumReport",
    "FanojcError",
    "InvalidParameterError",
    "ObservableSet",
    "OracleConfig",
    "RankDeficiencyError",
    "SingularPointError",
    "SteadyState",
    "SweepAxis",
    "SweepResult",
    "SweepSpec",
    "SystemParams",
    "UndefinedFanoParameterError",
    "ZeroIntensityError",
    "bic_conditions",
    "build_liouvillian",
    "conventional_dip",
    "decomposition_analytic",
    "derive",
    "enhancement",
    "eta_max",
    "fano_maximum",
    "g2_analytic",
    "g2_closed_form",
    "intensity_analytic",
    "load_config",
    "locate_bic",
    "locate_g2_extrema",
    "maximize_eta",
    "observables_analytic",
    "observables_from_amplitudes",
    "observables_from_state",
    "oracle_observables",
    "params_from_mapping",
    "single_excitation_eigenvalues",
    "solve_amplitudes",
    "steady_state",
    "steady_state_auto",
    "sweep",
]
