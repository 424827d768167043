"""Exact diagonalization and thermodynamics of Fock parafermions coupled to a
(possibly deformed) oscillator mode, block by conserved total excitation number."""

from .algebra import (
    CliffordTriple,
    OccupationConfig,
    PhaseRoot,
    block_dimension,
    block_dimension_closed_form,
    build_mode_matrix,
    clifford_mode,
    clifford_triple,
    destruction_phase,
    destruction_phase_exponent,
    enumerate_block_basis,
    number_operator_matrix,
    total_number_matrix,
    weight,
)
from .blocks import (
    BlockHamiltonian,
    ModelParams,
    add_mu_number_term,
    build_block,
    build_full_truncated,
    build_higher_spin_block,
)
from .deformations import Deformation, evaluate, ladder_amplitudes
from .eigensolver import Spectrum, cluster_eigenvalues, eigendecompose, eigenvalues_only
from .errors import (
    ConvergenceError,
    DeformationError,
    NumericalError,
    OutOfRegimeError,
    ParameterError,
)
from .exact import (
    LabeledSpectrum,
    exact_f2_deformed,
    exact_f2_undeformed,
    exact_f3_k1,
    semiclassical_levels_f2,
    semiclassical_z_f2,
    semiclassical_z_f2_closed_form,
    semiclassical_z_k1,
)
from .thermo import (
    PlateauReport,
    ThermoObservables,
    detect_plateaus,
    log_sum_exp,
    n_via_mu_derivative,
    omega_scan,
    phi_n_via_omega_derivative,
    thermo_from_block,
    thermo_from_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BlockHamiltonian",
    "CliffordTriple",
    "ConvergenceError",
    "Deformation",
    "DeformationError",
    "LabeledSpectrum",
    "ModelParams",
    "NumericalError",
    "OccupationConfig",
    "OutOfRegimeError",
    "ParameterError",
    "PhaseRoot",
    "PlateauReport",
    "Spectrum",
    "ThermoObservables",
    "add_mu_number_term",
    "block_dimension",
    "block_dimension_closed_form",
    "build_block",
    "build_full_truncated",
    "build_higher_spin_block",
    "build_mode_matrix",
    "clifford_mode",
    "clifford_triple",
    "cluster_eigenvalues",
    "destruction_phase",
    "destruction_phase_exponent",
    "detect_plateaus",
    "eigendecompose",
    "eigenvalues_only",
    "enumerate_block_basis",
    "evaluate",
    "exact_f2_deformed",
    "exact_f2_undeformed",
    "exact_f3_k1",
    "ladder_amplitudes",
    "log_sum_exp",
    "n_via_mu_derivative",
    "number_operator_matrix",
    "omega_scan",
    "phi_n_via_omega_derivative",
    "semiclassical_levels_f2",
    "semiclassical_z_f2",
    "semiclassical_z_f2_closed_form",
    "semiclassical_z_k1",
    "thermo_from_block",
    "thermo_from_spectrum",
    "total_number_matrix",
    "weight",
]
