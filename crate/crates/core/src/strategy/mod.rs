//! Player strategies and their text descriptors.

mod descriptor;
mod player_one;
mod player_two;

pub use descriptor::{parse_player_one, parse_player_two, PlayerOneDescriptor, PlayerTwoDescriptor};
pub use player_one::{player_one_menu, PlayerIAction, StrategyI};
pub use player_two::{sigma_move, Phase, Reply, StrategyII};

use crate::game::GameError;
use crate::order::OrderError;
use crate::sets::SetError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("strategy asked to move out of turn")]
    OutOfTurn,
    #[error("block family broke its contract: {0}")]
    Contract(String),
}
