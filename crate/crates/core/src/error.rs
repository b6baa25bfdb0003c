use thiserror::Error;

/// Which side of a game broke the rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Alice,
    Bob,
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::Alice => f.write_str("Alice"),
            Player::Bob => f.write_str("Bob"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overlapping gaps: {0}")]
    Overlap(String),
    #[error("gap not contained in hull: {0}")]
    Containment(String),
    #[error("set has only {available} gaps, {requested} requested")]
    Exhausted { available: usize, requested: usize },
    #[error("inconclusive at the requested depth: {0}")]
    Inconclusive(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("iteration cap of {0} reached")]
    Nontermination(usize),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("strategy parameters do not match: {0}")]
    ParamMismatch(String),
    #[error("illegal move by {player}: {rule}")]
    IllegalMove { player: Player, rule: String },
    #[error("outcome undetermined: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
