use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("site {site} is outside 1..={num_sites}")]
    SiteOutOfRange { site: usize, num_sites: usize },

    #[error("particle number {particles} is outside 0..={max}")]
    SectorOutOfRange { particles: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fermionization needs odd nu and theta = pi/m^2: {0}")]
    NotFermionic(String),

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("the vacuum sector has no one-particle reduced density matrix")]
    VacuumSector,

    #[error("state mixes particle-number sectors")]
    MixedSector,

    #[error("matrix trace {trace} is not 1")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("Fock space dimension {dimension} exceeds the limit {limit}")]
    TooLarge { dimension: u128, limit: usize },

    #[error("x = 0 is a removable singularity of the closed form; the limit is nu/2 = {limit}")]
    SingularPoint { limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
