//! Exact diagonalization for one-dimensional generalized anyons with at most
//! `nu` particles per site, their composite fermions `a^m`, and the resulting
//! hopping Hamiltonians, entanglement entropies and occupation statistics.

pub mod eigensolve;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod operators;
pub mod oracles;
pub mod params;
pub mod statmech;

pub use eigensolve::{
    ground_state, hermitian_eig, GroundState, HermitianMatrix, SpectralDecomposition,
};
pub use entanglement::{
    entropy_scan, ground_state_entropy, reduced_density_matrix_general,
    reduced_density_matrix_two_site, von_neumann_entropy, DensityMatrix, EntropyRecord,
    ParticlePolicy, ScanOutcome, SkipReason, SkippedPoint,
};
pub use error::{Error, Result};
pub use fock::{fock_basis, sector_basis, FockState, StateVector};
pub use hamiltonian::{
    build_full_hamiltonian, build_sector_hamiltonian, ModelParams, SectorHamiltonian,
};
pub use operators::{LadderKind, OperatorString};
pub use params::{AlgebraParams, ExchangePhase};
pub use statmech::{gentile_occupation, gentile_occupation_closed, OccupationQuery};
