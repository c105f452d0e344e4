use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported group: {family} with {structure} structure (n = {n})")]
    UnsupportedCombination {
        family: String,
        structure: String,
        n: usize,
    },

    #[error("matrix is not an element of {0}")]
    NotInGroup(String),

    #[error("dimension mismatch: expected {expected}x{expected}, found {rows}x{cols}")]
    DimensionMismatch { expected: usize, rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("not a cocycle: relative residual {0:.3e}")]
    NotACocycle(f64),

    #[error("the shifted cohomology set is empty, no class exists")]
    NoClassExists,

    #[error("{0} is not a real central class of {1}")]
    NotARealCentralClass(String, String),

    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),

    #[error("no adjoint model for {0}")]
    NoAdjointModel(String),

    #[error("k does not define an inner twist: sigma(k)k is not a listed central representative")]
    NotATwist,

    #[error("class {label} is not in the class list of {group} (c = {c})")]
    UnknownClass { label: String, group: String, c: String },

    #[error("stabilizer of {0} is not tabulated")]
    NotTabulated(String),

    #[error("invalid curve topology: {0}")]
    InvalidTopology(String),

    #[error("unsupported family for component counting: {0}")]
    UnsupportedFamily(String),

    #[error("brute-force census limited to r <= {limit}, got r = {r}")]
    TooLarge { r: usize, limit: usize },

    #[error("normalization failed to converge (residual {0:.3e})")]
    NormalizationFailed(f64),

    #[error("parse error: {0}")]
    Parse(String),
}
