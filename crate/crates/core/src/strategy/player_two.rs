use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::family::BlockFamily;
use crate::game::{Certificate, CertificateKind, GameState, Player};
use crate::order::{between_or_above, compare, OrderExpr, Point};
use crate::ordinal::Ordinal;
use crate::sets::{SetError, SigmaPresentation};

use super::StrategyError;

/// One Player II move with the certificates justifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub point: Point,
    pub certificates: Vec<Certificate>,
    /// Every payoff point is now excluded.
    pub early_win: bool,
}

/// Sigma move against piece `S_n`: the least point of `S_n` in
/// `(lower, upper)` if there is one, otherwise any legal point. Either way
/// `(lower, move) ∩ S_n = ∅`. Returns whether the minimum was played.
pub fn sigma_move(
    order: &OrderExpr,
    sigma: &SigmaPresentation,
    n: u64,
    lower: &Point,
    upper: Option<&Point>,
) -> Result<(Point, bool), StrategyError> {
    let piece = sigma.piece_at(n);
    match piece.min_in_interval(order, Some(lower), upper)? {
        Some(m) => Ok((m, true)),
        None => Ok((between_or_above(order, lower, upper)?, false)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum Phase {
    Sigma,
    /// Looking for the block to delegate to; `bound` only decreases.
    Searching { bound: Ordinal },
    Delegating { block: Ordinal, since: u32 },
    /// The whole payoff is excluded.
    Won { stage: u32 },
}

#[derive(Debug, Clone)]
enum Kind {
    Sigma {
        sigma: SigmaPresentation,
    },
    Blocks {
        family: Arc<dyn BlockFamily>,
        phase: Phase,
        sub: Option<SigmaPresentation>,
    },
}

/// A Player II strategy. Deterministic: the reply depends only on the
/// history, which the strategy tracks incrementally.
#[derive(Debug, Clone)]
pub struct StrategyII {
    descriptor: String,
    order: Arc<OrderExpr>,
    kind: Kind,
}

impl StrategyII {
    pub fn sigma(order: &OrderExpr, sigma: SigmaPresentation, descriptor: String) -> Self {
        StrategyII {
            descriptor,
            order: Arc::new(order.clone()),
            kind: Kind::Sigma { sigma },
        }
    }

    pub fn blocks(family: Arc<dyn BlockFamily>, descriptor: String) -> Result<Self, StrategyError> {
        let caps = family.capabilities();
        for (ok, capability) in [
            (caps.least_block_below, "least-block-below"),
            (caps.separator, "separator"),
        ] {
            if !ok {
                return Err(SetError::MissingCapability {
                    family: family.describe(),
                    capability,
                }
                .into());
            }
        }
        Ok(StrategyII {
            descriptor,
            order: Arc::new(family.order().clone()),
            kind: Kind::Blocks {
                phase: Phase::Searching {
                    bound: family.index_bound().clone(),
                },
                family,
                sub: None,
            },
        })
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> &OrderExpr {
        &self.order
    }

    pub fn phase(&self) -> Phase {
        match &self.kind {
            Kind::Sigma { .. } => Phase::Sigma,
            Kind::Blocks { phase, .. } => phase.clone(),
        }
    }

    /// Reply to Player I's latest move. The state must have Player II to
    /// move; the strategy must have seen every earlier position.
    pub fn step(&mut self, state: &GameState) -> Result<Reply, StrategyError> {
        if state.to_move() != Some(Player::Two) {
            return Err(StrategyError::OutOfTurn);
        }
        let stage = state.stage();
        let (lower, upper) = state.open_bounds();
        let lower = lower.expect("Player II always has a lower bound").clone();
        let upper = upper.cloned();
        let order = Arc::clone(&self.order);
        let order = order.as_ref();
        match &mut self.kind {
            Kind::Sigma { sigma } => {
                let n = u64::from(stage);
                let (point, _) = sigma_move(order, sigma, n, &lower, upper.as_ref())?;
                Ok(Reply {
                    point,
                    certificates: vec![Certificate {
                        stage,
                        kind: CertificateKind::SigmaExclusion {
                            block: None,
                            piece: n,
                        },
                    }],
                    early_win: false,
                })
            }
            Kind::Blocks { family, phase, sub } => {
                blocks_step(order, family.as_ref(), phase, sub, stage, &lower, upper.as_ref())
            }
        }
    }
}

fn filler(order: &OrderExpr, lower: &Point, upper: Option<&Point>) -> Result<Reply, StrategyError> {
    Ok(Reply {
        point: between_or_above(order, lower, upper)?,
        certificates: Vec::new(),
        early_win: false,
    })
}

fn blocks_step(
    order: &OrderExpr,
    family: &dyn BlockFamily,
    phase: &mut Phase,
    sub: &mut Option<SigmaPresentation>,
    stage: u32,
    lower: &Point,
    upper: Option<&Point>,
) -> Result<Reply, StrategyError> {
    let cert = |kind| Certificate { stage, kind };
    match phase.clone() {
        Phase::Sigma => unreachable!("block strategies never enter the sigma phase"),
        Phase::Won { .. } => filler(order, lower, upper),
        Phase::Delegating { block, since } => {
            let sigma = sub.as_ref().expect("delegation installs a sub-strategy");
            let n = u64::from(stage - since);
            let (point, _) = sigma_move(order, sigma, n, lower, upper)?;
            Ok(Reply {
                point,
                certificates: vec![cert(CertificateKind::SigmaExclusion {
                    block: Some(block),
                    piece: n,
                })],
                early_win: false,
            })
        }
        Phase::Searching { bound } => {
            let mut certificates = Vec::new();
            let Some((alpha, witness)) = family.least_block_below(lower)? else {
                // Nothing reaches below a: try to clear every block at once.
                let gamma = family.index_bound().clone();
                return match family.separator(&gamma, lower, upper)? {
                    Some(point) => {
                        *phase = Phase::Won { stage };
                        Ok(Reply {
                            certificates: vec![cert(CertificateKind::Separation {
                                bound: gamma,
                                point: point.clone(),
                            })],
                            point,
                            early_win: true,
                        })
                    }
                    None => filler(order, lower, upper),
                };
            };
            match alpha.cmp(&bound) {
                Ordering::Greater => {
                    return Err(StrategyError::Contract(format!(
                        "least block below {lower} rose from {bound} to {alpha}"
                    )))
                }
                Ordering::Less => certificates.push(cert(CertificateKind::DescentEvent {
                    from: bound,
                    to: alpha.clone(),
                    witness,
                })),
                Ordering::Equal => {}
            }
            let Some(separator) = family.separator(&alpha, lower, upper)? else {
                *phase = Phase::Searching { bound: alpha };
                let mut reply = filler(order, lower, upper)?;
                reply.certificates = certificates;
                return Ok(reply);
            };
            // First delegated move: piece 0 of S_alpha, capped by the
            // separator so the separation claim holds too.
            let sigma = family.block(&alpha)?;
            let point = match sigma.piece_at(0).min_in_interval(order, Some(lower), upper)? {
                Some(m) if alpha.is_zero() || compare(order, &m, &separator)? != Ordering::Greater => m,
                _ => separator,
            };
            certificates.push(cert(CertificateKind::Separation {
                bound: alpha.clone(),
                point: point.clone(),
            }));
            certificates.push(cert(CertificateKind::Delegation {
                block: alpha.clone(),
            }));
            certificates.push(cert(CertificateKind::SigmaExclusion {
                block: Some(alpha.clone()),
                piece: 0,
            }));
            *phase = Phase::Delegating {
                block: alpha,
                since: stage,
            };
            *sub = Some(sigma);
            Ok(Reply {
                point,
                certificates,
                early_win: false,
            })
        }
    }
}
