use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("series {series} did not converge within {terms} terms")]
    NonConvergence { series: &'static str, terms: usize },

    #[error("denominator parameter {param} reaches a pole at term {term}")]
    DenominatorPole { param: f64, term: usize },

    #[error("argument outside the domain of convergence: {0}")]
    Domain(String),

    #[error("truncation of {family} state not certified: tail bound {tail_bound:e} at dimension cap {max_dim}")]
    TruncationFailed {
        family: String,
        max_dim: usize,
        tail_bound: f64,
    },

    #[error("closed-form normalization disagrees with the coefficient sum: |norm - 1| = {deviation:e}")]
    NormalizationMismatch { deviation: f64 },

    #[error(
        "state truncation insufficient: need dimension {needed}, have {available} and the state cannot be regenerated"
    )]
    TruncationInsufficient { needed: usize, available: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("Mandel parameter undefined for a state with zero mean photon number")]
    ZeroMeanPhotonNumber,

    #[error("distribution not normalizable within kmax = {kmax}: captured mass {mass}")]
    NotNormalizable { kmax: usize, mass: f64 },

    #[error("Wigner series tail not certified at kmax = {kmax}: completeness deficit {deficit:e}")]
    WignerTail { kmax: usize, deficit: f64 },

    #[error("grid point ({i}, {j}) at z = {x} + {y}i: {source}")]
    GridPoint {
        i: usize,
        j: usize,
        x: f64,
        y: f64,
        source: Box<Error>,
    },
}
