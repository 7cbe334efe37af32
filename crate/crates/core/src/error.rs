use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    /// The vote of the given (0-based) voter is not a permutation of the candidates.
    #[error("vote of voter {0} is not a permutation of the candidates")]
    NotAPermutation(usize),

    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    #[error("duplicate candidate label `{0}`")]
    DuplicateLabel(String),

    #[error("selection must not be empty")]
    EmptySelection,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("width {width} not in 1..={m}")]
    BadWidth { width: usize, m: usize },

    #[error("voter count {count} not in 1..={n}")]
    BadVoterCount { count: usize, n: usize },

    #[error("antagonism needs an even number of voters, got {0}")]
    OddVoterCount(usize),

    #[error("enumeration of {needed} subsets exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("invalid culture spec: {0}")]
    InvalidSpec(String),

    #[error("ILP solution is not optimal")]
    NotOptimal,

    #[error("LP parse error on line {line}: {reason}")]
    LpParse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_width(width: usize, m: usize) -> Result<()> {
    if width == 0 || width > m {
        return Err(Error::BadWidth { width, m });
    }
    Ok(())
}

pub(crate) fn check_voter_count(count: usize, n: usize) -> Result<()> {
    if count == 0 || count > n {
        return Err(Error::BadVoterCount { count, n });
    }
    Ok(())
}
