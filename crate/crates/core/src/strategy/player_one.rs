use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{GameState, Player};
use crate::order::{between, compare, point_above, point_below, OrderExpr, Point};

use super::StrategyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayerIAction {
    Move(Point),
    Resign(String),
}

/// `w` legal Player I moves, sorted ascending. Stage 0 spreads around the
/// anchor one unit apart; later stages subdivide `(a_{n-1}, b_{n-1})` by
/// mediants, breadth first.
pub fn player_one_menu(
    state: &GameState,
    width: usize,
    anchor: Option<&Point>,
) -> Result<Vec<Point>, StrategyError> {
    let order = state.order();
    let mut menu = Vec::with_capacity(width);
    if width == 0 {
        return Ok(menu);
    }
    match state.current_interval() {
        None => {
            let anchor = match anchor {
                Some(p) => p.clone(),
                None => order.origin()?,
            };
            menu.push(anchor.clone());
            let (mut lo, mut hi) = (anchor.clone(), anchor);
            while menu.len() < width {
                lo = point_below(order, &lo)?;
                menu.push(lo.clone());
                if menu.len() < width {
                    hi = point_above(order, &hi)?;
                    menu.push(hi.clone());
                }
            }
        }
        Some((a, b)) => {
            let mut queue = VecDeque::from([(a.clone(), b.clone())]);
            while menu.len() < width {
                let (lo, hi) = queue.pop_front().expect("queue never drains");
                let mid = between(order, &lo, &hi)?;
                menu.push(mid.clone());
                queue.push_back((lo, mid.clone()));
                queue.push_back((mid, hi));
            }
        }
    }
    sort_points(order, &mut menu)?;
    Ok(menu)
}

fn sort_points(order: &OrderExpr, points: &mut [Point]) -> Result<(), StrategyError> {
    let mut err = None;
    points.sort_by(|x, y| match compare(order, x, y) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub enum StrategyI {
    /// Uniform choice from [`player_one_menu`].
    RandomLegal {
        width: usize,
        anchor: Option<Point>,
        rng: ChaCha8Rng,
    },
    /// Keep `target` strictly inside every interval for as long as
    /// Player II allows.
    Trap { target: Point },
    Scripted { moves: Vec<Point>, next: usize },
}

impl StrategyI {
    pub fn random(seed: u64, width: usize, anchor: Option<Point>) -> Self {
        StrategyI::RandomLegal {
            width: width.max(1),
            anchor,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn trap(target: Point) -> Self {
        StrategyI::Trap { target }
    }

    pub fn scripted(moves: Vec<Point>) -> Self {
        StrategyI::Scripted { moves, next: 0 }
    }

    pub fn step(&mut self, state: &GameState) -> Result<PlayerIAction, StrategyError> {
        if state.to_move() != Some(Player::One) {
            return Err(StrategyError::OutOfTurn);
        }
        let order = state.order();
        match self {
            StrategyI::RandomLegal { width, anchor, rng } => {
                let menu = player_one_menu(state, *width, anchor.as_ref())?;
                let i = rng.random_range(0..menu.len());
                Ok(PlayerIAction::Move(menu[i].clone()))
            }
            StrategyI::Trap { target } => match state.current_interval() {
                None => Ok(PlayerIAction::Move(point_below(order, target)?)),
                Some((a, b)) => {
                    let inside = compare(order, a, target)? == Ordering::Less
                        && compare(order, target, b)? == Ordering::Less;
                    if inside {
                        Ok(PlayerIAction::Move(between(order, a, target)?))
                    } else {
                        Ok(PlayerIAction::Resign(format!("target {target} escaped")))
                    }
                }
            },
            StrategyI::Scripted { moves, next } => match moves.get(*next) {
                Some(p) => {
                    *next += 1;
                    Ok(PlayerIAction::Move(p.clone()))
                }
                None => Ok(PlayerIAction::Resign("script exhausted".into())),
            },
        }
    }
}
