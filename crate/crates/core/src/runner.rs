//! Driving a match between two strategies and recording the transcript.

use crate::game::{
    Certificate, GameError, GameState, MoveRecord, Player, StrategyIds, Termination, Transcript,
};
use crate::order::{OrderExpr, Point};
use crate::sets::SetDescriptor;
use crate::strategy::{
    PlayerIAction, PlayerOneDescriptor, PlayerTwoDescriptor, StrategyError, StrategyI, StrategyII,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSpec {
    pub order: OrderExpr,
    pub payoff: SetDescriptor,
    pub player_i: PlayerOneDescriptor,
    pub player_ii: PlayerTwoDescriptor,
    pub horizon: u32,
    pub seed: u64,
    /// End the match as soon as Player II has excluded the whole payoff.
    pub stop_on_early_win: bool,
}

impl MatchSpec {
    /// Spec with the strategy's own target as payoff.
    pub fn new(
        order: OrderExpr,
        player_i: PlayerOneDescriptor,
        player_ii: PlayerTwoDescriptor,
        horizon: u32,
        seed: u64,
    ) -> Self {
        MatchSpec {
            payoff: player_ii.default_payoff(),
            order,
            player_i,
            player_ii,
            horizon,
            seed,
            stop_on_early_win: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("player I is human; moves must be submitted")]
    NeedsHuman,
    #[error("the match is over")]
    Over,
}

/// A match in progress. Cloning is cheap enough to preview moves.
#[derive(Debug, Clone)]
pub struct Match {
    spec: MatchSpec,
    state: GameState,
    player_i: Option<StrategyI>,
    player_ii: StrategyII,
    moves: Vec<MoveRecord>,
    certificates: Vec<Certificate>,
    termination: Option<Termination>,
}

impl Match {
    pub fn new(spec: MatchSpec) -> Result<Self, MatchError> {
        let state = GameState::new(spec.order.clone(), spec.horizon)?;
        let player_ii = spec.player_ii.build(&spec.order)?;
        let player_i = spec.player_i.build(spec.seed);
        let termination = state.is_finished().then_some(Termination::Horizon);
        Ok(Match {
            spec,
            state,
            player_i,
            player_ii,
            moves: Vec::new(),
            certificates: Vec::new(),
            termination,
        })
    }

    pub fn spec(&self) -> &MatchSpec {
        &self.spec
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn player_ii(&self) -> &StrategyII {
        &self.player_ii
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn termination(&self) -> Option<&Termination> {
        self.termination.as_ref()
    }

    pub fn is_over(&self) -> bool {
        self.termination.is_some()
    }

    fn record(&mut self, stage: u32, player: Player, point: Point) {
        self.moves.push(MoveRecord {
            stage,
            player,
            point,
        });
    }

    /// Play Player I's move and Player II's reply. Returns the
    /// certificates of the reply. An illegal Player I point is rejected
    /// without changing anything; an illegal reply ends the match.
    pub fn submit(&mut self, point: Point) -> Result<Vec<Certificate>, MatchError> {
        if self.is_over() {
            return Err(MatchError::Over);
        }
        let point = point.conform(&self.spec.order).map_err(GameError::from)?;
        let stage = self.state.stage();
        self.state = self.state.play_move(point.clone())?;
        self.record(stage, Player::One, point);
        let reply = self.player_ii.step(&self.state)?;
        match self.state.play_move(reply.point.clone()) {
            Ok(next) => self.state = next,
            Err(GameError::Illegal(e)) => {
                self.termination = Some(Termination::IllegalMove {
                    player: Player::Two,
                    stage,
                    point: reply.point,
                    reason: e.to_string(),
                });
                return Ok(Vec::new());
            }
            Err(e) => return Err(e.into()),
        }
        self.record(stage, Player::Two, reply.point);
        self.certificates.extend(reply.certificates.iter().cloned());
        if self.state.is_finished() {
            self.termination = Some(Termination::Horizon);
        } else if reply.early_win && self.spec.stop_on_early_win {
            self.termination = Some(Termination::EarlyWin);
        }
        Ok(reply.certificates)
    }

    /// One full stage driven by the Player I strategy.
    pub fn step(&mut self) -> Result<(), MatchError> {
        if self.is_over() {
            return Err(MatchError::Over);
        }
        let stage = self.state.stage();
        let player_i = self.player_i.as_mut().ok_or(MatchError::NeedsHuman)?;
        match player_i.step(&self.state)? {
            PlayerIAction::Resign(reason) => {
                self.resign(reason);
                Ok(())
            }
            PlayerIAction::Move(p) => match self.state.check_move(&p) {
                Ok(()) => self.submit(p).map(|_| ()),
                Err(GameError::Illegal(e)) => {
                    self.termination = Some(Termination::IllegalMove {
                        player: Player::One,
                        stage,
                        point: p,
                        reason: e.to_string(),
                    });
                    Ok(())
                }
                Err(e) => Err(e.into()),
            },
        }
    }

    pub fn resign(&mut self, reason: String) {
        if self.termination.is_none() {
            self.termination = Some(Termination::Resigned {
                player: Player::One,
                stage: self.state.stage(),
                reason,
            });
        }
    }

    pub fn abandon(&mut self) {
        if self.termination.is_none() {
            self.termination = Some(Termination::Abandoned);
        }
    }

    pub fn run_to_end(&mut self) -> Result<(), MatchError> {
        while !self.is_over() {
            self.step()?;
        }
        Ok(())
    }

    /// Transcript so far; an unfinished match is marked abandoned.
    pub fn transcript(&self) -> Transcript {
        Transcript {
            order: self.spec.order.to_string(),
            payoff: self.spec.payoff.to_string(),
            strategies: StrategyIds {
                player_i: self.spec.player_i.to_string(),
                player_ii: self.spec.player_ii.to_string(),
            },
            seed: self.spec.seed,
            horizon: self.spec.horizon,
            moves: self.moves.clone(),
            certificates: self.certificates.clone(),
            termination: self.termination.clone().unwrap_or(Termination::Abandoned),
        }
    }
}

/// Play a match between two automatic strategies to its end.
pub fn run_match(spec: MatchSpec) -> Result<Transcript, MatchError> {
    let mut m = Match::new(spec)?;
    m.run_to_end()?;
    Ok(m.transcript())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_order, parse_point};
    use crate::game::CertificateKind;
    use crate::strategy::{parse_player_one, parse_player_two};

    fn spec(order: &str, p1: &str, p2: &str, horizon: u32) -> MatchSpec {
        let order = parse_order(order).unwrap();
        let p1 = parse_player_one(&order, p1).unwrap();
        let p2 = parse_player_two(&order, p2).unwrap();
        MatchSpec::new(order, p1, p2, horizon, 0)
    }

    #[test]
    fn sigma_excludes_each_piece_in_turn() {
        let t = run_match(spec("Q", "random(1, 3)", "sigma(enumerated(e, 256))", 16)).unwrap();
        assert_eq!(t.termination, Termination::Horizon);
        assert_eq!(t.moves.len(), 32);
        t.replay().unwrap();
        for (k, c) in t.certificates.iter().enumerate() {
            assert_eq!(c.stage, k as u32);
            assert_eq!(
                c.kind,
                CertificateKind::SigmaExclusion {
                    block: None,
                    piece: k as u64
                }
            );
        }
    }

    #[test]
    fn trap_on_enumerated_point_is_caught() {
        let t = run_match(spec("Q", "trap(1/2)", "sigma(enumerated(e, 256))", 64)).unwrap();
        // 1/2 is e(5): excluded by stage 5 at the latest.
        match t.termination {
            Termination::Resigned { stage, .. } => assert!(stage <= 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_delegates_at_stage_zero() {
        let t = run_match(spec("lex(rev(ord(w)), Q)", "scripted((5, 0))", "universal", 4)).unwrap();
        let kinds: Vec<_> = t.certificates.iter().map(|c| c.kind.name()).collect();
        assert_eq!(kinds, ["descent_event", "separation", "delegation", "sigma_exclusion"]);
        let lex = t.parse_order().unwrap();
        assert_eq!(t.moves[1].point.clone().conform(&lex).unwrap(), parse_point(&lex, "(5, 1)").unwrap());
    }

    #[test]
    fn telescoping_forces_descents() {
        let t = run_match(spec(
            "Q",
            "scripted(-3/4, -2/3, -1/2, -1/3)",
            "blocks(telescoping(w))",
            8,
        ))
        .unwrap();
        let descents: Vec<_> = t
            .certificates
            .iter()
            .filter_map(|c| match &c.kind {
                CertificateKind::DescentEvent { from, to, .. } => Some((from.to_string(), to.to_string())),
                _ => None,
            })
            .collect();
        assert_eq!(
            descents,
            [("w", "4"), ("4", "3"), ("3", "2"), ("2", "1")].map(|(a, b)| (a.to_string(), b.to_string()))
        );
        let b: Vec<String> = t.moves.iter().skip(1).step_by(2).map(|m| m.point.to_string()).collect();
        assert_eq!(&b[..3], ["1/4", "-1/7", "-2/9"]);
        assert!(t.certificates_of("delegation").any(|c| c.stage == 3));
    }

    #[test]
    fn early_win_stops_when_asked() {
        let mut s = spec("Q", "scripted(-5/6, -1/2)", "conversewo(recip)", 16);
        s.stop_on_early_win = true;
        let t = run_match(s).unwrap();
        assert_eq!(t.termination, Termination::EarlyWin);
        assert_eq!(t.moves[1].point.to_string(), "-5/7");
    }

    #[test]
    fn human_matches_need_moves() {
        let mut m = Match::new(spec("Q", "human", "sigma(finite{1})", 2)).unwrap();
        assert_eq!(m.step(), Err(MatchError::NeedsHuman));
        assert!(m.submit(Point::Rational(0.into())).is_ok());
        assert!(m.submit(Point::Rational(5.into())).is_err());
        assert_eq!(m.state().history().len(), 2);
    }
}
