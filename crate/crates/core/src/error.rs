//! Crate-wide error type.

use std::fmt;

/// Errors produced by field construction, function analysis and the
/// bentness criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Extension degree outside the supported range, or of the wrong parity.
    UnsupportedDegree { m: u32, even_required: bool },
    /// The reduction polynomial has the wrong degree for the field.
    PolynomialDegreeMismatch { poly: u32, m: u32 },
    /// The reduction polynomial factors over GF(2).
    ReduciblePolynomial { poly: u32 },
    /// The residue class of x is not a generator of the multiplicative group.
    NonPrimitiveGenerator { poly: u32, order: u32 },
    /// An argument that must be nonzero was zero.
    ZeroArgument(&'static str),
    /// An argument that must lie in the subfield GF(2^n) (or its unit group)
    /// does not.
    NotInSubfield(&'static str),
    /// An argument that must lie outside the subfield GF(2^n) lies in it.
    InSubfield(&'static str),
    /// The criterion is only defined for larger fields.
    FieldTooSmall { n: u32, min: u32 },
    /// Arguments that must be pairwise distinct coincide.
    CoincidentArguments(&'static str),
    /// `k` does not divide `m`, so the trace tower Tr_k^m is undefined.
    InvalidTraceTower { k: u32, m: u32 },
    /// The operation requires a bent function.
    NotBent,
    /// The two functions live over different fields.
    FieldMismatch,
    /// Definitional hyper-bentness is only evaluated up to this degree.
    DegreeTooLargeForHyperBent { m: u32, max: u32 },
    /// A trace-polynomial exponent is not the canonical representative of
    /// its cyclotomic coset.
    NotCosetRepresentative { exponent: u32 },
    /// Two trace-polynomial terms fall in the same cyclotomic coset.
    DuplicateCoset { exponent: u32 },
    /// A trace-polynomial coefficient lies outside GF(2^o(j)).
    CoefficientOutsideCosetField { exponent: u32 },
    /// Combiner arity does not match the number of block coefficients.
    ArityMismatch { expected: usize, got: usize },
    /// A closed-form hypothesis was violated.
    HypothesisViolated(&'static str),
    /// An exhaustive sweep over a parameter space this large was refused.
    ScopeTooLarge { size: u128, limit: u128 },
    /// A persisted table failed validation on load.
    TableInvariant(String),
    /// A file had an unexpected format.
    Format(String),
    /// Underlying I/O failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedDegree { m, even_required } => {
                if *even_required {
                    write!(f, "unsupported extension degree m={m}: need an even m with 2 <= m <= 16")
                } else {
                    write!(f, "unsupported extension degree m={m}: need 1 <= m <= 16")
                }
            }
            Error::PolynomialDegreeMismatch { poly, m } => {
                write!(f, "reduction polynomial {poly:#X} does not have degree {m}")
            }
            Error::ReduciblePolynomial { poly } => {
                write!(f, "reduction polynomial {poly:#X} is reducible over GF(2)")
            }
            Error::NonPrimitiveGenerator { poly, order } => write!(
                f,
                "x is not primitive modulo {poly:#X}: its multiplicative order is {order}"
            ),
            Error::ZeroArgument(what) => write!(f, "argument `{what}` must be nonzero"),
            Error::NotInSubfield(what) => {
                write!(f, "argument `{what}` must lie in the subfield GF(2^n)")
            }
            Error::InSubfield(what) => {
                write!(f, "argument `{what}` must lie outside the subfield GF(2^n)")
            }
            Error::FieldTooSmall { n, min } => {
                write!(f, "criterion undefined for n={n}: requires n >= {min}")
            }
            Error::CoincidentArguments(what) => {
                write!(f, "arguments `{what}` must be pairwise distinct")
            }
            Error::InvalidTraceTower { k, m } => {
                write!(f, "trace tower Tr_{k}^{m} undefined: {k} does not divide {m}")
            }
            Error::NotBent => write!(f, "function is not bent"),
            Error::FieldMismatch => write!(f, "functions live over different fields"),
            Error::DegreeTooLargeForHyperBent { m, max } => write!(
                f,
                "definitional hyper-bentness check refused for m={m} > {max}; \
                 use the circle weight criterion instead"
            ),
            Error::NotCosetRepresentative { exponent } => write!(
                f,
                "exponent {exponent} is not the minimal representative of its cyclotomic coset"
            ),
            Error::DuplicateCoset { exponent } => {
                write!(f, "duplicate cyclotomic coset for exponent {exponent}")
            }
            Error::CoefficientOutsideCosetField { exponent } => write!(
                f,
                "coefficient of exponent {exponent} lies outside its coset subfield"
            ),
            Error::ArityMismatch { expected, got } => {
                write!(f, "combiner expects {expected} block coefficients, got {got}")
            }
            Error::HypothesisViolated(what) => write!(f, "closed-form hypothesis violated: {what}"),
            Error::ScopeTooLarge { size, limit } => write!(
                f,
                "exhaustive scope of {size} parameter sets exceeds the limit of {limit}"
            ),
            Error::TableInvariant(msg) => write!(f, "table invariant violated: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
