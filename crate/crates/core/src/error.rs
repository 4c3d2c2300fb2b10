use thiserror::Error;

use crate::game::Universe;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("expression at byte {offset} exceeds the elaboration budget of {budget} nodes")]
    ElaborationBudget { offset: usize, budget: usize },

    #[error("malformed interchange document: {0}")]
    Interchange(String),

    #[error("{game} is not in the {universe} universe")]
    NotInUniverse { game: String, universe: Universe },

    #[error("{0} is not dead-ending")]
    NotDeadEnding(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration exceeds the cap of {cap} games")]
    ResourceCap { cap: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn not_in(game: crate::game::GameId, universe: Universe) -> Error {
        Error::NotInUniverse {
            game: game.to_string(),
            universe,
        }
    }
}
