use thiserror::Error;

/// Errors raised by toolkit operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A wavevector with a zero component or zero self-dot was passed to an
    /// operation that divides by components or by n·n.
    #[error("wavevector is not regular: {0}")]
    NonRegularWavevector(String),
    /// A normalized eigenvalue strayed too far from the expected {0, 1, 2} set.
    #[error("eigenvalue clustering failed: normalized eigenvalue {value} is {deviation:.3e} from the nearest of {{0, 1, 2}}")]
    ClusterFailure { value: String, deviation: f64 },
    /// The Gram matrix of a subspace basis is too ill-conditioned to invert.
    #[error("singular Gram matrix: condition number {0:.3e} exceeds 1e12")]
    SingularGram(f64),
    /// The temporal wavevector component vanishes where a division by it is required.
    #[error("temporal wavevector component is zero (|n4| = {0:.3e})")]
    ZeroTemporalComponent(f64),
    /// A purely spatial wavevector was required but n4 is nonzero.
    #[error("wavevector is not purely spatial (|n4| = {0:.3e})")]
    NonSpatialWavevector(f64),
    /// A pointwise linear system could not be solved reliably.
    #[error("singular linear system: {0}")]
    SingularSystem(String),
    /// The transformed covariant representation does not reduce to three
    /// independent values within tolerance.
    #[error("transformed tensor does not fit the three-value template: mismatch {0:.3e}")]
    TemplateMismatch(f64),
    /// The mass-force direction is numerically zero; no balance scale exists.
    #[error("degenerate force direction: norm {0:.3e}")]
    DegenerateDirection(f64),
    /// Simulation or run configuration is invalid.
    #[error("invalid configuration: {0}")]
    ConfigError(String),
    /// A basis index does not belong to the requested subspace.
    #[error("basis index {index} does not belong to subspace {subspace}")]
    IndexOutOfSubspace { index: usize, subspace: String },
}

pub type Result<T> = std::result::Result<T, Error>;
