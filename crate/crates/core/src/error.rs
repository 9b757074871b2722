use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be between 1 and {max}, got {rank}")]
    InvalidRank { rank: usize, max: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("not a signed permutation: {0}")]
    NotSignedPermutation(String),
    #[error("pattern letters must be pairwise distinct")]
    RepeatedPatternLetter,
    #[error("invalid interval [{a},{b}] for rank {rank}")]
    InvalidInterval { a: i32, b: i32, rank: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("condensed join before stage {stage} merges no parallel edges")]
    NothingToCondense { stage: usize },
    #[error("condensed join before stage {stage} would merge edges between two self-reflected vertices")]
    SelfReflectedMerge { stage: usize },
    #[error("unknown builtin network {0:?}")]
    UnknownNetwork(String),
    #[error("network has condensed joins; use the generalized enumeration")]
    CondensedNetwork,
    #[error("invalid path family: {0}")]
    InvalidFamily(String),
    #[error("{element} is not in the parabolic subgroup of {interval}")]
    NotInParabolic { element: String, interval: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("estimated {estimate} path families exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}
