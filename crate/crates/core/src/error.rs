use thiserror::Error;

use crate::game_core::GameClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("player {player} out of range for a game with {n} players")]
    PlayerOutOfRange { player: usize, n: usize },

    #[error("coalition mask {mask:#b} is not a subset of a {n}-player set")]
    CoalitionOutOfRange { mask: u32, n: usize },

    #[error("games with {0} players are not supported (limit {max})", max = crate::game_core::MAX_PLAYERS)]
    TooManyPlayers(usize),

    #[error("the empty coalition is not allowed here")]
    EmptyCoalition,

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the incomplete game is not {0}-extendable")]
    NotExtendable(GameClass),

    #[error("game is not convex")]
    NotConvex,

    #[error("{0} is not supported for this operation")]
    UnsupportedClass(GameClass),

    #[error("unknown exact endpoints: {0}")]
    UnknownEndpoints(String),

    #[error("effective dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("polyhedral cone is not pointed (lineality space of dimension {0})")]
    NotPointed(usize),

    #[error("point does not belong to the polyhedron")]
    NotInPolyhedron,

    #[error("expected a homogeneous system (all right-hand sides zero)")]
    NotHomogeneous,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}
