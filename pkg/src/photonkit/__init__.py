"""Spectral-grid toolkit for photon wavefunctions of classical EM fields.

Classical six-component fields (sqrt(eps0) E, sqrt(mu0) H) on periodic 3D
grids are decomposed into transverse helicity modes, evolved exactly in
k-space, scaled per spectral component into normalized single-photon
wavefunctions, and promoted to a finite-mode Fock layer with coarse-grained
photon counters.  Every algebraic and conservation property the
construction relies on is covered by the test suite.
"""

from .lattice import (NATURAL, FieldState, Grid3D, PhysicalConstants,
                      SpectralField, make_grid, si_constants, to_spatial,
                      to_spectral)
from .helicity import (J6, SPIN, SX, SY, SZ, HelicityVectors,
                       SpectralCoefficients, grid_basis, helicity_eigencheck,
                       project, synthesize, transverse_basis)
from .maxwell import (FluxField, apply_hamiltonian, continuity_residual,
                      evolve, observables, spectral_divergence,
                      transversality_residual)
from .photon import (DensityComparison, PhotonDensities, PhotonWavefunction,
                     angular_momentum_z, centroid_velocity, density_comparison,
                     packet_centroid, photon_number_spectrum,
                     probability_current_consistency, scale_to_photon,
                     spin_form_current, synthesize_position)
from .fock import (FockState, Mode, ModeSet, RegionSpec, annihilate,
                   coarse_flux_through_surface, coarse_number_in_volume,
                   create, hamiltonian_expectation, number_expectation,
                   transition_matrix)

__version__ = "0.1.0"

__all__ = [
    "NATURAL", "FieldState", "Grid3D", "PhysicalConstants", "SpectralField",
    "make_grid", "si_constants", "to_spatial", "to_spectral",
    "J6", "SPIN", "SX", "SY", "SZ", "HelicityVectors",
    "SpectralCoefficients", "grid_basis", "helicity_eigencheck", "project",
    "synthesize", "transverse_basis",
    "FluxField", "apply_hamiltonian", "continuity_residual", "evolve",
    "observables", "spectral_divergence", "transversality_residual",
    "DensityComparison", "PhotonDensities", "PhotonWavefunction",
    "angular_momentum_z", "centroid_velocity", "density_comparison",
    "packet_centroid", "photon_number_spectrum",
    "probability_current_consistency", "scale_to_photon", "spin_form_current",
    "synthesize_position",
    "FockState", "Mode", "ModeSet", "RegionSpec", "annihilate",
    "coarse_flux_through_surface", "coarse_number_in_volume", "create",
    "hamiltonian_expectation", "number_expectation", "transition_matrix",
    "__version__",
]
