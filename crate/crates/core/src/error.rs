use alloc::string::String;

/// Errors produced by the algebra, sampling and experiment routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty root list")]
    EmptyRoots,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("order {order} out of range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("coefficient prefix has length {available}, need {needed}")]
    PrefixTooShort { needed: usize, available: usize },
    #[error("coefficient list must start with a leading 1 (monic), got {0}")]
    NotMonic(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("partition size {0} exceeds the enumeration cap of 12")]
    PartitionCap(usize),
    #[error("falling factorial ({n})_{k} requires k <= n")]
    FallingFactorialRange { n: u64, k: u64 },
    #[error("series constant term must be {expected} for {op}")]
    SeriesConstant {
        op: &'static str,
        expected: &'static str,
    },
    #[error("series truncation order {have} is below the required {need}")]
    SeriesTooShort { need: usize, have: usize },
    #[error("root solve left imaginary residue {residue:e} above tolerance {tolerance:e}")]
    ComplexRoots { residue: f64, tolerance: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("singular matrix")]
    Singular,
    #[error("quadrature did not reach tolerance {0:e}")]
    Quadrature(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("{failed} of {total} root solves failed (last error: {last})")]
    RootFailures {
        failed: usize,
        total: usize,
        last: String,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
