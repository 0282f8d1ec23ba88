"""Tight-binding Hamiltonians on periodic square lattices with momentum-labelled eigenbases."""

from .analytic import (
    AnalyticEigenpair,
    Momentum,
    MomentumIndex,
    analytic_eigenpair,
    analytic_eigenvalue,
    analytic_eigenvector,
    degeneracy_census,
    dispersion_point,
)
from .bands import (
    BandData,
    SpectrumData,
    analytic_dispersion,
    compare_to_analytic,
    compute_basis,
    compute_dispersion,
    compute_spectrum,
)
from .eigen import (
    EigenDecomposition,
    EigenvalueClusters,
    cluster_eigenvalues,
    eig_hermitian,
)
from .model import (
    CommutingFamily,
    LatticeSpec,
    build_chain,
    build_family,
    build_hamiltonian,
    build_shift,
    build_symmetries,
    kron,
)
from .simdiag import (
    CandidateDeficitError,
    MomentumLabelError,
    RefinementError,
    SimultaneousDiagonalizationError,
    SymBasis,
    VerificationReport,
    combination_matrices,
    filter_simultaneous,
    fix_phase,
    momentum_labels,
    simultaneous_basis_combination,
    simultaneous_basis_refine,
    verify_basis,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticEigenpair",
    "BandData",
    "CandidateDeficitError",
    "CommutingFamily",
    "EigenDecomposition",
    "EigenvalueClusters",
    "LatticeSpec",
    "Momentum",
    "MomentumIndex",
    "MomentumLabelError",
    "RefinementError",
    "SimultaneousDiagonalizationError",
    "SpectrumData",
    "SymBasis",
    "VerificationReport",
    "analytic_dispersion",
    "analytic_eigenpair",
    "analytic_eigenvalue",
    "analytic_eigenvector",
    "build_chain",
    "build_family",
    "build_hamiltonian",
    "build_shift",
    "build_symmetries",
    "cluster_eigenvalues",
    "combination_matrices",
    "compare_to_analytic",
    "compute_basis",
    "compute_dispersion",
    "compute_spectrum",
    "degeneracy_census",
    "dispersion_point",
    "eig_hermitian",
    "filter_simultaneous",
    "fix_phase",
    "kron",
    "momentum_labels",
    "simultaneous_basis_combination",
    "simultaneous_basis_refine",
    "verify_basis",
]
