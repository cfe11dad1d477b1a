//! Error taxonomy shared across the workbench.

use thiserror::Error;

/// Everything that can go wrong while analyzing a tableau.
#[derive(Debug, Error)]
pub enum Error {
    /// A supplied generator list is linearly dependent.
    #[error("generator {index} is linearly dependent on the previous ones")]
    DependentGenerators { index: usize },

    /// No basis with admissible (nonincreasing, nested) characters was found.
    #[error("no admissible generic basis found after {trials} trials")]
    GenericityFailure { trials: usize },

    /// A reduced-form coefficient sits outside the allowed triangular support.
    #[error("reduced-form entry B[{a},{lambda}][{k},{b}] violates triangularity")]
    TriangularityViolated {
        a: usize,
        lambda: usize,
        k: usize,
        b: usize,
    },

    /// A covector argument has support outside the first `ell` slots.
    #[error("covector has support outside the first {ell} slots (index {index})")]
    SupportViolation { ell: usize, index: usize },

    /// A subspace expected to be invariant under an endomorphism is not.
    #[error("subspace is not invariant: {context}")]
    InvarianceViolated { context: String },

    /// Enumerating all maximal minors would exceed the configured cap.
    #[error("minor enumeration would produce {count} minors, above the cap {cap}")]
    MinorExplosion { count: usize, cap: usize },

    /// The span accumulation in the variety computation failed to stabilize.
    #[error("span accumulation still growing after {rounds} rounds")]
    Unstable { rounds: usize },

    /// The elementary reduction flag stopped being monotone.
    #[error("reduction flag is not monotone at level {level}")]
    NonmonotoneFlag { level: usize },

    /// The span accumulation failed to stabilize while building a flag,
    /// reported with the dimensions collected so far.
    #[error(
        "span accumulation still growing after {rounds} rounds at flag level {level} \
         (dimensions so far: {partial_dims:?})"
    )]
    UnstableFlag {
        level: usize,
        rounds: usize,
        partial_dims: Vec<usize>,
    },

    /// An operation that requires a homogeneous ideal received a non-homogeneous one.
    #[error("ideal is not homogeneous")]
    NonHomogeneous,

    /// An operation that requires a zero-dimensional ideal received something else.
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    /// A fixture parameter is outside its admissible domain.
    #[error("parameter outside admissible domain: {0}")]
    ParameterDomain(String),

    /// The random sampler exhausted its retry budget.
    #[error("failed to generate a sample after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input was well-formed but does not match the expected schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// Input was structurally valid but carries an unusable value.
    #[error("invalid value: {0}")]
    Value(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
