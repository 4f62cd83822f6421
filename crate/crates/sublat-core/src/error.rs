use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("characteristic mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("enumeration guard exceeded: {0}^{1} > 2^20")]
    SizeGuard(u32, usize),
    #[error("vector lies outside the subspace")]
    NotInSubspace,
    #[error("subspace is not contained in the morphism source")]
    NotSubspaceOfSource,
    #[error("map is not injective")]
    NotInjective,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrices do not form a subgroup: {0}")]
    NotSubgroup(String),
    #[error("groupoid is invalid: {0}")]
    InvalidGroupoid(String),
    #[error("functor table carries no generator labels")]
    MissingQLabels,
    #[error("element not present in functor table")]
    ElementAbsent,
    #[error("element kernel is not unique among maximal candidates")]
    AmbiguousKernel,
    #[error("structural invariant violated: {0}")]
    Invariant(String),
    #[error("no witness injection into ambient {0}")]
    NoWitness(usize),
    #[error("element is not central")]
    NotCentral,
    #[error("operation requires p = 2, got {0}")]
    RequiresP2(u32),
    #[error("polynomial parse error: {0}")]
    PolyParse(String),
    #[error("groupoid must live on a single ambient space")]
    SingleAmbientRequired,
}

pub type Result<T> = std::result::Result<T, Error>;
