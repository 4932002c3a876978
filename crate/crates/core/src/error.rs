use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input lies outside the supported coefficient field.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("square root has a branch point here (odd leading order {0})")]
    OddLeadingOrder(i64),

    #[error("not a Riccati foliation: {0}")]
    NotRiccati(String),

    #[error("not a solution: {0}")]
    NotASolution(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("b11^2 - 4*b20*b02 vanishes; the Whittaker reduction does not apply")]
    DegenerateDiscriminant,

    #[error("singular parameter combination: {0}")]
    SingularParameterCombination(String),

    #[error("polynomial generation failed: {0}")]
    GenerationFailed(String),

    #[error("syntax error at {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
