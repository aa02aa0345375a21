use thiserror::Error;

/// Errors raised by the combinatorial and geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not parse permutation from {0:?}")]
    Parse(String),
    #[error("entries {0:?} do not form a bijection of 1..n")]
    NotABijection(Vec<usize>),
    #[error("entry {value} is outside 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("index ({row}, {col}) is outside the {n}x{n} grid")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("size {n} exceeds the configured limit {max}")]
    SizeLimitExceeded { n: usize, max: usize },
    #[error("letter s{letter} is not valid for ambient rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("the diagram is empty")]
    EmptyDiagram,
    #[error("box set is not a skew shape: {0}")]
    NotSkew(String),
    #[error("not a noncrossing alternating spanning forest: {0}")]
    InvalidForest(String),
    #[error("lattice path leaves the diagram at ({row}, {col})")]
    PathLeavesDiagram { row: usize, col: usize },
    #[error("malformed lattice path: {0}")]
    InvalidPath(String),
    #[error("points are not affinely independent")]
    NotIndependent,
    #[error("lifted facet {facet:?} does not determine a unique affine function")]
    DegenerateLift { facet: Vec<usize> },
    #[error("no subword of the word is a reduced word for {0:?}")]
    NotExpressible(Vec<usize>),
    #[error("{0:?} is not of the form 1w with w dominant")]
    NotOneDominant(Vec<usize>),
    #[error("graph is not acyclic: {0}")]
    CyclicGraph(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error reports bad input rather than a failed computation.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Overflow | Error::NotIndependent | Error::DegenerateLift { .. } | Error::CyclicGraph(_)
        )
    }
}
