use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong outside of problem-file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("integer overflow in exponent arithmetic")]
    Overflow,

    #[error("zero quantity is not invertible")]
    NotInvertible,

    #[error("quantity dimension is not in the integer span of the basis")]
    NotExpandable,

    #[error("invalid local basis: {0}")]
    InvalidBasis(&'static str),

    #[error("basis columns are linearly dependent")]
    DependentColumns,

    #[error("target is outside the rational span of the basis columns")]
    NoSolution,

    #[error("kappa must be a positive integer, got {0}")]
    InvalidKappa(i64),

    #[error("matrix has nullity {nullity}, a pseudocircuit needs exactly 1")]
    NotPseudocircuit { nullity: usize },

    #[error("column set {0:?} is not a pseudocircuit")]
    NotAPseudocircuit(Vec<usize>),

    #[error("variable index {0} is not a member of the column set")]
    NotAMember(usize),

    #[error("unknown variable `{0}`")]
    UnknownName(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("symmetric pair `{0}` and `{1}` have different dimensions")]
    SymmetryDimensionMismatch(String, String),

    #[error("no dependent variable declared")]
    NoDependent,

    #[error("no prebasis exists: the quantity function is not precomplete")]
    NotPrecomplete,

    #[error("kappa = {0} leaves every prebasis unsolvable")]
    KappaInsufficient(i64),

    #[error("no pair of equations maps onto each other under swapping `{0}` and `{1}`")]
    NoSymmetricPair(String, String),

    #[error("functional equation exponent {0} is not covered by a template")]
    UnsupportedExponent(i64),

    #[error("substitution `{0}` has no factors")]
    EmptySubstitution(String),

    #[error("substitution overlaps on `{0}`")]
    OverlappingSubstitution(String),

    #[error("`{0}` is replaced by a substitution but still referenced by `{1}`")]
    DanglingVariable(String, String),
}

/// A problem-file error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("unknown base dimension `{0}`")]
    UnknownDimension(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("symmetric pair `{0}` and `{1}` have different dimensions")]
    DimensionMismatch(String, String),

    #[error("{0}")]
    Invalid(Error),
}
