//! Rules of the interval game: alternating moves
//! `a₀ < a₁ < … < aₙ < bₙ < … < b₁ < b₀`, truncated at a finite horizon.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dsl::{parse_order, ParseError};
use crate::order::{compare, OrderError, OrderExpr, Point};
use crate::ordinal::Ordinal;

pub const DEFAULT_HORIZON: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "I")]
    One,
    #[serde(rename = "II")]
    Two,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::One => write!(f, "I"),
            Player::Two => write!(f, "II"),
        }
    }
}

/// Which side of the current interval a move fell on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "side", content = "bound", rename_all = "snake_case")]
pub enum Violation {
    /// The move must be strictly above this point.
    Lower(Point),
    /// The move must be strictly below this point.
    Upper(Point),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("illegal move {point} by player {player} at stage {stage}: {}", describe_violations(.violations))]
pub struct LegalityError {
    pub stage: u32,
    pub player: Player,
    pub point: Point,
    pub violations: Vec<Violation>,
}

fn describe_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| match v {
            Violation::Lower(b) => format!("must be > {b}"),
            Violation::Upper(b) => format!("must be < {b}"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("games need a dense order without endpoints, got {0}")]
    NotDense(String),
    #[error("game over: horizon {0} reached")]
    GameOver(u32),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Illegal(#[from] LegalityError),
}

/// Immutable game position; [`GameState::play_move`] returns the successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    order: Arc<OrderExpr>,
    history: Vec<Point>,
    horizon: u32,
}

impl GameState {
    pub fn new(order: OrderExpr, horizon: u32) -> Result<Self, GameError> {
        Self::with_shared(Arc::new(order), horizon)
    }

    pub fn with_shared(order: Arc<OrderExpr>, horizon: u32) -> Result<Self, GameError> {
        if !order.is_dense_unbounded() {
            return Err(GameError::NotDense(order.to_string()));
        }
        Ok(GameState {
            order,
            history: Vec::new(),
            horizon,
        })
    }

    pub fn order(&self) -> &OrderExpr {
        &self.order
    }

    pub fn shared_order(&self) -> Arc<OrderExpr> {
        Arc::clone(&self.order)
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn history(&self) -> &[Point] {
        &self.history
    }

    /// Index of the stage in progress (or the number of stages played once
    /// the horizon is reached).
    pub fn stage(&self) -> u32 {
        (self.history.len() / 2) as u32
    }

    /// Stages with both moves made.
    pub fn completed_stages(&self) -> u32 {
        self.stage()
    }

    pub fn is_finished(&self) -> bool {
        self.history.len() >= 2 * self.horizon as usize
    }

    pub fn to_move(&self) -> Option<Player> {
        if self.is_finished() {
            None
        } else if self.history.len() % 2 == 0 {
            Some(Player::One)
        } else {
            Some(Player::Two)
        }
    }

    pub fn a(&self, k: u32) -> Option<&Point> {
        self.history.get(2 * k as usize)
    }

    pub fn b(&self, k: u32) -> Option<&Point> {
        self.history.get(2 * k as usize + 1)
    }

    /// Open interval the next move must fall in; `None` is unbounded.
    pub fn open_bounds(&self) -> (Option<&Point>, Option<&Point>) {
        let n = self.history.len();
        if n == 0 {
            return (None, None);
        }
        if n % 2 == 1 {
            // Player II at stage k: (a_k, b_{k-1})
            let upper = if n >= 3 { Some(&self.history[n - 2]) } else { None };
            (Some(&self.history[n - 1]), upper)
        } else {
            // Player I at stage k: (a_{k-1}, b_{k-1})
            (Some(&self.history[n - 2]), Some(&self.history[n - 1]))
        }
    }

    /// The latest completed interval `(a_k, b_k)`, if any stage finished.
    pub fn current_interval(&self) -> Option<(&Point, &Point)> {
        let k = self.completed_stages();
        if k == 0 {
            None
        } else {
            Some((self.a(k - 1)?, self.b(k - 1)?))
        }
    }

    pub fn check_move(&self, p: &Point) -> Result<(), GameError> {
        let player = self.to_move().ok_or(GameError::GameOver(self.horizon))?;
        p.validate(&self.order)?;
        let (lower, upper) = self.open_bounds();
        let mut violations = Vec::new();
        if let Some(l) = lower {
            if compare(&self.order, l, p)? != Ordering::Less {
                violations.push(Violation::Lower(l.clone()));
            }
        }
        if let Some(u) = upper {
            if compare(&self.order, p, u)? != Ordering::Less {
                violations.push(Violation::Upper(u.clone()));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(LegalityError {
                stage: self.stage(),
                player,
                point: p.clone(),
                violations,
            }
            .into())
        }
    }

    pub fn play_move(&self, p: Point) -> Result<GameState, GameError> {
        self.check_move(&p)?;
        let mut next = self.clone();
        next.history.push(p);
        Ok(next)
    }
}

pub fn new_game(order: OrderExpr, horizon: u32) -> Result<GameState, GameError> {
    GameState::new(order, horizon)
}

/// A finitely checkable claim emitted with a Player II move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub stage: u32,
    #[serde(flatten)]
    pub kind: CertificateKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum CertificateKind {
    /// `(a_k, b_k) ∩ piece = ∅` for piece `piece` of the top-level payoff
    /// (`block: None`) or of block `block`'s presentation.
    SigmaExclusion { block: Option<Ordinal>, piece: u64 },
    /// `point <= y` for every `y` in every block indexed below `bound`.
    Separation { bound: Ordinal, point: Point },
    /// From this stage on Player II plays the sub-strategy of `block`.
    Delegation { block: Ordinal },
    /// The working block index dropped from `from` to `to`; `witness` is an
    /// element of block `to` below the current `a`.
    DescentEvent {
        from: Ordinal,
        to: Ordinal,
        witness: Point,
    },
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::SigmaExclusion { .. } => "sigma_exclusion",
            CertificateKind::Separation { .. } => "separation",
            CertificateKind::Delegation { .. } => "delegation",
            CertificateKind::DescentEvent { .. } => "descent_event",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.stage;
        match &self.kind {
            CertificateKind::SigmaExclusion { block: None, piece } => {
                write!(f, "stage {k}: (a{k}, b{k}) misses piece S_{piece}")
            }
            CertificateKind::SigmaExclusion {
                block: Some(alpha),
                piece,
            } => write!(f, "stage {k}: (a{k}, b{k}) misses piece {piece} of block {alpha}"),
            CertificateKind::Separation { bound, point } => {
                write!(f, "stage {k}: b{k} = {point} lies below every block indexed < {bound}")
            }
            CertificateKind::Delegation { block } => {
                write!(f, "stage {k}: delegating to the strategy of block {block}")
            }
            CertificateKind::DescentEvent { from, to, witness } => write!(
                f,
                "stage {k}: block index {from} -> {to}, witness {witness} < a{k}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyIds {
    pub player_i: String,
    pub player_ii: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub stage: u32,
    pub player: Player,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Horizon,
    /// Player II excluded the whole payoff and the match was stopped.
    EarlyWin,
    Resigned {
        player: Player,
        stage: u32,
        reason: String,
    },
    IllegalMove {
        player: Player,
        stage: u32,
        point: Point,
        reason: String,
    },
    Abandoned,
}

/// Full record of a match. Field order is fixed for byte-stable JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub order: String,
    pub payoff: String,
    pub strategies: StrategyIds,
    pub seed: u64,
    pub horizon: u32,
    pub moves: Vec<MoveRecord>,
    pub certificates: Vec<Certificate>,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("order text: {0}")]
    Order(#[from] ParseError),
    #[error("move {index}: expected stage {expected_stage} player {expected_player}, found stage {stage} player {player}")]
    Sequence {
        index: usize,
        expected_stage: u32,
        expected_player: Player,
        stage: u32,
        player: Player,
    },
    #[error("move {index}: {source}")]
    Move { index: usize, source: GameError },
    #[error("more moves than the horizon allows")]
    TooLong,
}

impl Transcript {
    pub fn parse_order(&self) -> Result<OrderExpr, ParseError> {
        parse_order(&self.order)
    }

    /// Points of the moves conformed to the order, checking stage/player
    /// bookkeeping but not legality.
    pub fn conformed_moves(&self) -> Result<(OrderExpr, Vec<Point>), ReplayError> {
        let order = self.parse_order()?;
        if self.moves.len() > 2 * self.horizon as usize {
            return Err(ReplayError::TooLong);
        }
        let mut points = Vec::with_capacity(self.moves.len());
        for (index, m) in self.moves.iter().enumerate() {
            let expected_stage = (index / 2) as u32;
            let expected_player = if index % 2 == 0 { Player::One } else { Player::Two };
            if m.stage != expected_stage || m.player != expected_player {
                return Err(ReplayError::Sequence {
                    index,
                    expected_stage,
                    expected_player,
                    stage: m.stage,
                    player: m.player,
                });
            }
            let p = m.point.clone().conform(&order).map_err(|e| ReplayError::Move {
                index,
                source: e.into(),
            })?;
            points.push(p);
        }
        Ok((order, points))
    }

    /// Feed every move back through the engine.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        let (order, points) = self.conformed_moves()?;
        let mut state = GameState::new(order, self.horizon).map_err(|source| ReplayError::Move {
            index: 0,
            source,
        })?;
        for (index, p) in points.into_iter().enumerate() {
            state = state
                .play_move(p)
                .map_err(|source| ReplayError::Move { index, source })?;
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn certificates_of(&self, name: &str) -> impl Iterator<Item = &Certificate> {
        let name = name.to_string();
        self.certificates
            .iter()
            .filter(move |c| c.kind.name() == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn rp(s: &str) -> Point {
        Point::Rational(s.parse::<Rational>().unwrap())
    }

    fn bp(alpha: u64, s: &str) -> Point {
        Point::block_point(Ordinal::finite(alpha), s.parse().unwrap())
    }

    #[test]
    fn construction_requires_density() {
        let g = new_game(OrderExpr::Rationals, 64).unwrap();
        assert!(g.history().is_empty());
        assert_eq!(g.to_move(), Some(Player::One));
        assert!(matches!(
            new_game(OrderExpr::WellOrder(Ordinal::omega()), 8),
            Err(GameError::NotDense(_))
        ));
        let lex = OrderExpr::reversed_blocks(Ordinal::omega_pow(Ordinal::finite(2)));
        assert!(new_game(lex, 64).is_ok());
    }

    #[test]
    fn b0_must_exceed_a0() {
        let g = new_game(OrderExpr::Rationals, 4).unwrap();
        let g = g.play_move(rp("0")).unwrap();
        match g.play_move(rp("-1")) {
            Err(GameError::Illegal(e)) => {
                assert_eq!(e.player, Player::Two);
                assert_eq!(e.violations, vec![Violation::Lower(rp("0"))]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nesting_moves() {
        let g = new_game(OrderExpr::Rationals, 4).unwrap();
        let g = g.play_move(rp("0")).unwrap().play_move(rp("1")).unwrap();
        let g = g.play_move(rp("1/2")).unwrap().play_move(rp("3/4")).unwrap();
        assert_eq!(g.current_interval(), Some((&rp("1/2"), &rp("3/4"))));
        // Player I out of range on both sides is distinguishable.
        match g.play_move(rp("3/4")) {
            Err(GameError::Illegal(e)) => {
                assert_eq!(e.player, Player::One);
                assert_eq!(e.violations, vec![Violation::Upper(rp("3/4"))]);
            }
            other => panic!("{other:?}"),
        }
        match g.play_move(rp("1/4")) {
            Err(GameError::Illegal(e)) => assert_eq!(e.violations, vec![Violation::Lower(rp("1/2"))]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lex_move_across_blocks() {
        let order = OrderExpr::reversed_blocks(Ordinal::omega());
        let g = new_game(order, 4).unwrap();
        let g = g.play_move(bp(5, "0")).unwrap().play_move(bp(2, "0")).unwrap();
        assert!(g.play_move(bp(4, "0")).is_ok());
        assert!(g.play_move(bp(6, "0")).is_err());
    }

    #[test]
    fn horizon_ends_game() {
        let g = new_game(OrderExpr::Rationals, 0).unwrap();
        assert!(g.is_finished());
        assert!(matches!(g.play_move(rp("0")), Err(GameError::GameOver(0))));
        let g = new_game(OrderExpr::Rationals, 1).unwrap();
        let g = g.play_move(rp("0")).unwrap().play_move(rp("1")).unwrap();
        assert!(g.is_finished());
    }

    #[test]
    fn certificate_json_shape() {
        let c = Certificate {
            stage: 3,
            kind: CertificateKind::Delegation {
                block: Ordinal::finite(5),
            },
        };
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"stage":3,"kind":"delegation","data":{"block":{"cnf":[[{"cnf":[]},5]]}}}"#
        );
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
