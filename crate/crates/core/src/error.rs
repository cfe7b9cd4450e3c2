use alloc::string::String;
use core::fmt;

/// Failure modes of the algebra engine and the curve pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A sized input or intermediate result exceeded the configured budget.
    ResourceCap {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    /// `d_out * d_in` is not zero; the differentials were assembled wrongly.
    CompositionNonzero,
    /// An ambient map does not carry cycles to cycles or boundaries to
    /// boundaries.
    NotChainCompatible(String),
    /// A matrix does not respect the relations of its source group.
    NotWellDefined(String),
    DimensionMismatch(String),
    InvalidGroup(String),
    InvalidHomomorphism(String),
    /// `a^2 != 1 (mod n)` for a requested semidirect product.
    InvalidAction {
        n: u64,
        a: u64,
    },
    InvalidCocycle(String),
    /// The characteristic divides a stabilizer order or the gerbe modulus.
    Tameness {
        characteristic: u64,
        order: u64,
    },
    NotSurjective,
    NotInjective,
    InvalidCurve(String),
    /// First cohomology of the stacky curve is needed but cannot be
    /// derived from the curve data.
    MissingH1(String),
    /// An internal consistency check failed.
    InvariantViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Stable short code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ResourceCap { .. } => "resource-cap",
            Error::CompositionNonzero => "composition-nonzero",
            Error::NotChainCompatible(_) => "not-chain-compatible",
            Error::NotWellDefined(_) => "not-well-defined",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::InvalidGroup(_) => "invalid-group",
            Error::InvalidHomomorphism(_) => "invalid-homomorphism",
            Error::InvalidAction { .. } => "invalid-action",
            Error::InvalidCocycle(_) => "invalid-cocycle",
            Error::Tameness { .. } => "tameness",
            Error::NotSurjective => "not-surjective",
            Error::NotInjective => "not-injective",
            Error::InvalidCurve(_) => "invalid-curve",
            Error::MissingH1(_) => "missing-h1",
            Error::InvariantViolation(_) => "invariant-violation",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ResourceCap { what, requested, limit } => {
                write!(f, "{what} needs {requested} entries, limit is {limit}")
            }
            Error::CompositionNonzero => write!(f, "composite of differentials is not zero"),
            Error::NotChainCompatible(s) => write!(f, "map is not compatible with the complexes: {s}"),
            Error::NotWellDefined(s) => write!(f, "map is not well defined: {s}"),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::InvalidGroup(s) => write!(f, "invalid group table: {s}"),
            Error::InvalidHomomorphism(s) => write!(f, "invalid homomorphism: {s}"),
            Error::InvalidAction { n, a } => {
                write!(f, "a = {a} does not define an involution of Z/{n} (need a^2 = 1 mod n)")
            }
            Error::InvalidCocycle(s) => write!(f, "invalid cocycle: {s}"),
            Error::Tameness { characteristic, order } => {
                write!(f, "characteristic {characteristic} divides {order}; the stack is not tame")
            }
            Error::NotSurjective => write!(f, "homomorphism is not surjective"),
            Error::NotInjective => write!(f, "homomorphism is not injective"),
            Error::InvalidCurve(s) => write!(f, "invalid curve: {s}"),
            Error::MissingH1(s) => write!(f, "missing H^1 data: {s}"),
            Error::InvariantViolation(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

impl core::error::Error for Error {}

/// Size budget shared by every sized computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of nonzero matrix entries (and cochain basis
    /// elements) a single computation may hold.
    pub max_entries: u64,
}

impl Limits {
    pub const DEFAULT_MAX_ENTRIES: u64 = 5_000_000;

    pub fn new(max_entries: u64) -> Self {
        Limits { max_entries }
    }

    pub(crate) fn check(&self, what: &'static str, requested: u64) -> Result<()> {
        if requested > self.max_entries {
            Err(Error::ResourceCap { what, requested, limit: self.max_entries })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_entries: Self::DEFAULT_MAX_ENTRIES }
    }
}
