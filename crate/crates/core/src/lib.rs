//! Dense linear orders, payoff sets, the interval game on them, Player II
//! strategies with certificates, and a certificate checker.

pub mod dsl;
pub mod family;
pub mod game;
mod mutation;
pub mod order;
pub mod ordinal;
pub mod rational;
pub mod runner;
pub mod sets;
pub mod strategy;
pub mod verifier;

pub use dsl::{parse_family, parse_order, parse_ordinal, parse_point, parse_rational, parse_set, ParseError};
pub use family::{BlockFamily, Capabilities, FamilyDescriptor};
pub use game::{
    new_game, Certificate, CertificateKind, GameError, GameState, LegalityError, MoveRecord,
    Player, StrategyIds, Termination, Transcript, Violation,
};
pub use order::{between, compare, less, point_above, point_below, OrderError, OrderExpr, Point};
pub use ordinal::{Ordinal, OrdinalError};
pub use rational::{Rational, RationalEnumeration};
pub use sets::{ProbeBounds, SetDescriptor, SetError, SetOracle, SigmaPresentation};
pub use runner::{run_match, Match, MatchError, MatchSpec};
pub use strategy::{
    parse_player_one, parse_player_two, PlayerOneDescriptor, PlayerTwoDescriptor, StrategyError,
    StrategyI, StrategyII,
};
pub use verifier::{
    check_transcript, exhaustive_adversary, mutation_corpus, standard_bounds, transcript_oracle,
    Exhaustive, Failure, Mutant, VerificationReport, VerifyError,
};
