use thiserror::Error;

use crate::game::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid game: {}", summarize(.0))]
    InvalidGame(Vec<Violation>),

    #[error("unknown node {0:?}")]
    UnknownNode(String),

    #[error("unknown information set {0:?}")]
    UnknownInfoSet(String),

    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),

    #[error(
        "player {player} lacks perfect recall at {info_set:?}: {first:?} and {second:?} have different own histories"
    )]
    ImperfectRecall { player: u32, info_set: String, first: String, second: String },

    #[error("strategy profile: {0}")]
    Profile(String),

    #[error("play: {0}")]
    Play(String),

    #[error("backward context: {0}")]
    Context(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("causal model: {0}")]
    Causal(String),

    #[error("event formula: {0}")]
    Formula(String),

    #[error("concurrent game structure: {0}")]
    Cegs(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// A broken internal invariant; never caused by user input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

fn summarize(v: &[Violation]) -> String {
    match v {
        [] => "no violations".into(),
        [one] => one.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
