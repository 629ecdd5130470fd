//! Strategy descriptors:
//!
//! ```text
//! player_ii := "sigma(" set ")" | "blocks(" family ")" | "universal"
//!            | "conversewo(" chain ")"
//! player_i  := "random(" nat "," nat ("," point)? ")" | "trap(" point ")"
//!            | "scripted(" points ")" | "human"
//! ```

use std::fmt;

use crate::dsl::{ParseError, Parser};
use crate::family::{make_full_lex_blocks, ChainBlocks, FamilyDescriptor};
use crate::order::{OrderExpr, Point};
use crate::sets::{ChainSpec, SetDescriptor};

use super::{StrategyError, StrategyI, StrategyII};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayerTwoDescriptor {
    Sigma(SetDescriptor),
    Blocks(FamilyDescriptor),
    /// Block strategy over the full blocks of `lex(rev(ord(δ)), Q)`.
    Universal,
    /// Block strategy over the singletons of a conversely well-ordered chain.
    ConverseWo(ChainSpec),
}

impl PlayerTwoDescriptor {
    pub fn build(&self, order: &OrderExpr) -> Result<StrategyII, StrategyError> {
        let text = self.to_string();
        match self {
            PlayerTwoDescriptor::Sigma(set) => {
                Ok(StrategyII::sigma(order, set.presentation(order)?, text))
            }
            PlayerTwoDescriptor::Blocks(family) => StrategyII::blocks(family.build(order)?, text),
            PlayerTwoDescriptor::Universal => {
                StrategyII::blocks(std::sync::Arc::new(make_full_lex_blocks(order)?), text)
            }
            PlayerTwoDescriptor::ConverseWo(chain) => StrategyII::blocks(
                std::sync::Arc::new(ChainBlocks::new(order, chain.clone())?),
                text,
            ),
        }
    }

    /// The set this strategy is built to exclude.
    pub fn default_payoff(&self) -> SetDescriptor {
        match self {
            PlayerTwoDescriptor::Sigma(set) => set.clone(),
            PlayerTwoDescriptor::Blocks(family) => SetDescriptor::Union(family.clone()),
            PlayerTwoDescriptor::Universal => SetDescriptor::FullBlocks,
            PlayerTwoDescriptor::ConverseWo(chain) => SetDescriptor::Chain(chain.clone()),
        }
    }

    /// The block family for block strategies.
    pub fn family(&self) -> Option<FamilyDescriptor> {
        match self {
            PlayerTwoDescriptor::Sigma(_) => None,
            PlayerTwoDescriptor::Blocks(f) => Some(f.clone()),
            PlayerTwoDescriptor::Universal => Some(FamilyDescriptor::FullBlocks),
            PlayerTwoDescriptor::ConverseWo(c) => Some(FamilyDescriptor::Chain(c.clone())),
        }
    }
}

impl fmt::Display for PlayerTwoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlayerTwoDescriptor::Sigma(set) => write!(f, "sigma({set})"),
            PlayerTwoDescriptor::Blocks(family) => write!(f, "blocks({family})"),
            PlayerTwoDescriptor::Universal => write!(f, "universal"),
            PlayerTwoDescriptor::ConverseWo(chain) => write!(f, "conversewo({chain})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayerOneDescriptor {
    Random {
        seed: u64,
        width: usize,
        anchor: Option<Point>,
    },
    Trap(Point),
    Scripted(Vec<Point>),
    /// Moves come from outside (terminal or service).
    Human,
}

const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

impl PlayerOneDescriptor {
    /// `None` for [`PlayerOneDescriptor::Human`]. The match seed perturbs
    /// the random strategy's own seed; match seed 0 leaves it unchanged.
    pub fn build(&self, match_seed: u64) -> Option<StrategyI> {
        Some(match self {
            PlayerOneDescriptor::Random {
                seed,
                width,
                anchor,
            } => StrategyI::random(seed ^ match_seed.wrapping_mul(SEED_MIX), *width, anchor.clone()),
            PlayerOneDescriptor::Trap(x) => StrategyI::trap(x.clone()),
            PlayerOneDescriptor::Scripted(moves) => StrategyI::scripted(moves.clone()),
            PlayerOneDescriptor::Human => return None,
        })
    }
}

impl fmt::Display for PlayerOneDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlayerOneDescriptor::Random {
                seed,
                width,
                anchor: None,
            } => write!(f, "random({seed}, {width})"),
            PlayerOneDescriptor::Random {
                seed,
                width,
                anchor: Some(p),
            } => write!(f, "random({seed}, {width}, {p})"),
            PlayerOneDescriptor::Trap(x) => write!(f, "trap({x})"),
            PlayerOneDescriptor::Scripted(moves) => {
                write!(f, "scripted(")?;
                for (i, p) in moves.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            PlayerOneDescriptor::Human => write!(f, "human"),
        }
    }
}

fn unknown(pos: usize, what: &str, name: &str) -> ParseError {
    ParseError {
        pos,
        message: format!("unknown {what} strategy `{name}`"),
    }
}

pub fn parse_player_two(order: &OrderExpr, text: &str) -> Result<PlayerTwoDescriptor, ParseError> {
    let mut p = Parser::new(text)?;
    let start = p.position();
    let name = p.take_ident()?;
    let d = match name.as_str() {
        "universal" => PlayerTwoDescriptor::Universal,
        "sigma" => {
            p.expect_open()?;
            let set = p.set(order)?;
            p.expect_close()?;
            PlayerTwoDescriptor::Sigma(set)
        }
        "blocks" => {
            p.expect_open()?;
            let family = p.family(order)?;
            p.expect_close()?;
            PlayerTwoDescriptor::Blocks(family)
        }
        "conversewo" => {
            p.expect_open()?;
            let chain = p.chain(order)?;
            p.expect_close()?;
            PlayerTwoDescriptor::ConverseWo(chain)
        }
        other => return Err(unknown(start, "Player II", other)),
    };
    p.finish()?;
    if let Err(e) = d.build(order) {
        return Err(ParseError {
            pos: start,
            message: e.to_string(),
        });
    }
    Ok(d)
}

pub fn parse_player_one(order: &OrderExpr, text: &str) -> Result<PlayerOneDescriptor, ParseError> {
    let mut p = Parser::new(text)?;
    let start = p.position();
    let name = p.take_ident()?;
    let d = match name.as_str() {
        "human" => PlayerOneDescriptor::Human,
        "random" => {
            p.expect_open()?;
            let seed = p.take_nat()?;
            if !p.eat_comma() {
                return Err(ParseError {
                    pos: p.position(),
                    message: "random(seed, width[, anchor]) needs a width".into(),
                });
            }
            let pos = p.position();
            let width = p.take_nat()?;
            if width == 0 {
                return Err(ParseError {
                    pos,
                    message: "width must be positive".into(),
                });
            }
            let anchor = if p.eat_comma() { Some(p.point(order)?) } else { None };
            p.expect_close()?;
            PlayerOneDescriptor::Random {
                seed,
                width: width as usize,
                anchor,
            }
        }
        "trap" => {
            p.expect_open()?;
            let x = p.point(order)?;
            p.expect_close()?;
            PlayerOneDescriptor::Trap(x)
        }
        "scripted" => {
            p.expect_open()?;
            let moves = if p.peek_close() { Vec::new() } else { p.take_points(order)? };
            p.expect_close()?;
            PlayerOneDescriptor::Scripted(moves)
        }
        other => return Err(unknown(start, "Player I", other)),
    };
    p.finish()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_order;

    #[test]
    fn round_trips() {
        let q = OrderExpr::Rationals;
        let lex = parse_order("lex(rev(ord(w^2)), Q)").unwrap();
        for (order, text) in [
            (&q, "sigma(enumerated(e, 256))"),
            (&q, "sigma(finite{1/2, -3})"),
            (&q, "blocks(telescoping(w))"),
            (&q, "conversewo(recip)"),
            (&lex, "universal"),
            (&lex, "blocks(fullblocks)"),
        ] {
            let d = parse_player_two(order, text).unwrap();
            assert_eq!(d.to_string(), text);
        }
        for text in ["random(7, 3)", "random(7, 3, 1/2)", "trap(1/3)", "scripted(0, 1/2)", "scripted()", "human"] {
            assert_eq!(parse_player_one(&q, text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn rejects_mismatches() {
        let q = OrderExpr::Rationals;
        assert!(parse_player_two(&q, "universal").is_err());
        assert!(parse_player_two(&q, "sigma(fullblocks) x").is_err());
        assert!(parse_player_one(&q, "random(1, 0)").is_err());
        let e = parse_player_two(&q, "magic").unwrap_err();
        assert_eq!(e.pos, 0);
    }
}
