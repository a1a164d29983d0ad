use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structures must have at least one element")]
    Empty,
    #[error("relation is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("size {size} exceeds the limit of {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("not reflexive: {0} is not below itself")]
    NotReflexive(usize),
    #[error("not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    JoinMissing(usize, usize),
    #[error("structure has no unique bottom element")]
    NoUniqueBottom,
    #[error("pair {{{0}, {1}}} is given more than once")]
    DuplicatePair(usize, usize),
    #[error("subset {mask:#x} is not closed under join")]
    NotClosed { mask: u32 },
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("chain length must be positive")]
    ZeroLengthChain,
    #[error("no structure matches the decomposition for {0}")]
    NoMatch(&'static str),
    #[error("counting algorithms disagree: brute force {brute}, split {split}")]
    OracleMismatch { brute: u64, split: u64 },
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}
