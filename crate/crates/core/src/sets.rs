//! Payoff sets: well-founded pieces with exact minimum queries,
//! σ-presentations built from them, and membership oracles used for probing.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::family::FamilyDescriptor;
use crate::order::{compare, OrderError, OrderExpr, Point};
use crate::ordinal::Ordinal;
use crate::rational::{Rational, RationalEnumeration};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("interval is inverted: lower {lower} is not below upper {upper}")]
    InvertedInterval { lower: String, upper: String },
    #[error("family `{family}` does not provide the {capability} query")]
    MissingCapability {
        family: String,
        capability: &'static str,
    },
    #[error("block index {index} is not below the family bound {bound}")]
    BlockOutOfRange { index: Ordinal, bound: Ordinal },
    #[error("chain is not strictly decreasing at positions {index} and {next}: {first} vs {second}", next = index + 1)]
    ChainNotDecreasing {
        index: usize,
        first: String,
        second: String,
    },
    #[error("`{what}` needs an order of shape {expected}, got {found}")]
    WrongOrder {
        what: String,
        expected: &'static str,
        found: String,
    },
    #[error("{0}")]
    Unsupported(String),
}

/// Finite probe universe: rationals with denominator at most `max_den`
/// (taken in enumeration order, `per_block` of them), lifted into every
/// listed block index for block orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeBounds {
    pub max_den: u64,
    pub ordinals: Vec<Ordinal>,
    pub per_block: usize,
}

impl ProbeBounds {
    pub fn rationals(max_den: u64, per_block: usize) -> Self {
        ProbeBounds {
            max_den,
            ordinals: Vec::new(),
            per_block,
        }
    }

    /// The first `per_block` rationals of the fixed enumeration with
    /// denominator at most `max_den`.
    pub fn rational_grid(&self) -> Vec<Rational> {
        RationalEnumeration::new()
            .filter(|q| q.denom_u64() <= self.max_den)
            .take(self.per_block)
            .collect()
    }

    pub fn admits_rational(&self, q: &Rational) -> bool {
        q.denom_u64() <= self.max_den
    }

    /// Whether `x` lies in the probe universe's coordinates (denominators
    /// and listed blocks).
    pub fn admits(&self, x: &Point) -> bool {
        match x {
            Point::Rational(q) => self.admits_rational(q),
            Point::Pair(first, second) => {
                let block_ok = match first.as_ref() {
                    Point::Reversed(a) | Point::Ordinal(a) => self.ordinals.contains(a),
                    other => self.admits(other),
                };
                block_ok && self.admits(second)
            }
            Point::Ordinal(a) | Point::Reversed(a) => self.ordinals.contains(a),
        }
    }
}

/// A well-founded subset with an exact minimum-in-interval query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    FiniteSet(Vec<Point>),
    Singleton(Point),
    /// `{start + k·step : k ∈ ℕ}` in ℚ, `step > 0`; order type ω.
    WellOrderRange { start: Rational, step: Rational },
    /// `{block} × inner` inside a lexicographic order; `inner` lives in the
    /// second coordinate.
    BlockSlice { block: Point, inner: Box<Piece> },
}

impl Piece {
    pub fn empty() -> Self {
        Piece::FiniteSet(Vec::new())
    }

    pub fn contains(&self, order: &OrderExpr, x: &Point) -> Result<bool, SetError> {
        Ok(match self {
            Piece::FiniteSet(points) => {
                let mut found = false;
                for p in points {
                    if compare(order, p, x)? == Ordering::Equal {
                        found = true;
                        break;
                    }
                }
                found
            }
            Piece::Singleton(p) => compare(order, p, x)? == Ordering::Equal,
            Piece::WellOrderRange { start, step } => {
                let q = rational_of(order, x)?;
                let k = q.sub(start).div(step);
                k.is_integer() && !k.is_negative()
            }
            Piece::BlockSlice { block, inner } => {
                let (first, second) = lex_parts(order)?;
                let (x1, x2) = x.components().ok_or_else(|| shape(order, x))?;
                compare(first, block, x1)? == Ordering::Equal && inner.contains(second, x2)?
            }
        })
    }

    /// Exact minimum of the piece inside the open interval `(lower, upper)`;
    /// `None` bounds are infinite.
    pub fn min_in_interval(
        &self,
        order: &OrderExpr,
        lower: Option<&Point>,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        if let (Some(l), Some(u)) = (lower, upper) {
            if compare(order, l, u)? != Ordering::Less {
                return Err(SetError::InvertedInterval {
                    lower: l.to_string(),
                    upper: u.to_string(),
                });
            }
        }
        self.min_unchecked(order, lower, upper)
    }

    fn min_unchecked(
        &self,
        order: &OrderExpr,
        lower: Option<&Point>,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        let inside = |p: &Point| -> Result<bool, SetError> {
            let above = match lower {
                Some(l) => compare(order, l, p)? == Ordering::Less,
                None => true,
            };
            let below = match upper {
                Some(u) => compare(order, p, u)? == Ordering::Less,
                None => true,
            };
            Ok(above && below)
        };
        match self {
            Piece::Singleton(p) => Ok(if inside(p)? { Some(p.clone()) } else { None }),
            Piece::FiniteSet(points) => {
                let mut best: Option<&Point> = None;
                for p in points {
                    if inside(p)? {
                        best = match best {
                            Some(b) if compare(order, b, p)? != Ordering::Greater => Some(b),
                            _ => Some(p),
                        };
                    }
                }
                Ok(best.cloned())
            }
            Piece::WellOrderRange { start, step } => {
                let k = match lower {
                    None => num_bigint::BigInt::zero(),
                    Some(l) => {
                        let l = rational_of(order, l)?;
                        if l < start {
                            num_bigint::BigInt::zero()
                        } else {
                            l.sub(start).div(step).floor() + 1
                        }
                    }
                };
                let candidate = start.add(&step.mul(&Rational::new(k, 1).expect("den 1")));
                let candidate = Point::Rational(candidate);
                Ok(if inside(&candidate)? {
                    Some(candidate)
                } else {
                    None
                })
            }
            Piece::BlockSlice { block, inner } => {
                let (first, second) = lex_parts(order)?;
                // Restrict (lower, upper) to the block's second coordinate.
                let inner_lower = match lower {
                    None => None,
                    Some(l) => {
                        let (l1, l2) = l.components().ok_or_else(|| shape(order, l))?;
                        match compare(first, l1, block)? {
                            Ordering::Less => None,
                            Ordering::Equal => Some(l2),
                            Ordering::Greater => return Ok(None),
                        }
                    }
                };
                let inner_upper = match upper {
                    None => None,
                    Some(u) => {
                        let (u1, u2) = u.components().ok_or_else(|| shape(order, u))?;
                        match compare(first, u1, block)? {
                            Ordering::Greater => None,
                            Ordering::Equal => Some(u2),
                            Ordering::Less => return Ok(None),
                        }
                    }
                };
                let m = inner.min_unchecked(second, inner_lower, inner_upper)?;
                Ok(m.map(|m| Point::pair(block.clone(), m)))
            }
        }
    }

    /// Members of the piece within the probe universe (at most
    /// `per_block` for infinite pieces).
    pub fn probes(&self, bounds: &ProbeBounds) -> Vec<Point> {
        match self {
            Piece::Singleton(p) => filter_admitted(vec![p.clone()], bounds),
            Piece::FiniteSet(points) => filter_admitted(points.clone(), bounds),
            Piece::WellOrderRange { start, step } => (0..)
                .map(|k: i64| start.add(&step.mul(&Rational::integer(k))))
                .take(bounds.per_block.saturating_mul(4).max(bounds.per_block))
                .filter(|q| bounds.admits_rational(q))
                .take(bounds.per_block)
                .map(Point::Rational)
                .collect(),
            Piece::BlockSlice { block, inner } => inner
                .probes(bounds)
                .into_iter()
                .map(|p| Point::pair(block.clone(), p))
                .collect(),
        }
    }
}

fn filter_admitted(points: Vec<Point>, bounds: &ProbeBounds) -> Vec<Point> {
    points.into_iter().filter(|p| bounds.admits(p)).collect()
}

fn rational_of<'a>(order: &OrderExpr, x: &'a Point) -> Result<&'a Rational, SetError> {
    x.as_rational().ok_or_else(|| shape(order, x))
}

fn shape(order: &OrderExpr, x: &Point) -> SetError {
    SetError::Order(OrderError::ShapeMismatch {
        path: "$".into(),
        expected: order.to_string(),
        found: x.to_string(),
    })
}

fn lex_parts(order: &OrderExpr) -> Result<(&OrderExpr, &OrderExpr), SetError> {
    match order {
        OrderExpr::Lex(a, b) => Ok((a, b)),
        other => Err(SetError::WrongOrder {
            what: "block slice".into(),
            expected: "lex(_, _)",
            found: other.to_string(),
        }),
    }
}

/// `S = ⋃ₙ Sₙ` with every `Sₙ` well-founded; `piece_at` is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaPresentation {
    /// `Sₙ = {xₙ}` for the listed points, empty afterwards.
    Listed(Vec<Point>),
    /// `Sₙ = {e(n)}` for `n < count` (`None`: all of ℚ).
    RationalPrefix(Option<u64>),
    /// `S₀` is the given piece, every other piece is empty.
    Single(Piece),
    /// `Sₙ = {(α, e(n))}`: the full block `{α} × ℚ`.
    LexBlock(Ordinal),
    /// `Sₙ = {base + width/(n+1)}`, a conversely well-ordered sequence
    /// decreasing to `base`.
    Harmonic { base: Rational, width: Rational },
    /// Every piece of `inner` placed in block `block` of a lex order.
    InBlock {
        block: Point,
        inner: Box<SigmaPresentation>,
    },
}

impl SigmaPresentation {
    pub fn piece_at(&self, n: u64) -> Piece {
        match self {
            SigmaPresentation::Listed(points) => usize::try_from(n)
                .ok()
                .and_then(|i| points.get(i))
                .map(|p| Piece::Singleton(p.clone()))
                .unwrap_or_else(Piece::empty),
            SigmaPresentation::RationalPrefix(count) => match count {
                Some(c) if n >= *c => Piece::empty(),
                _ => Piece::Singleton(Point::Rational(RationalEnumeration::nth(n))),
            },
            SigmaPresentation::Single(piece) => {
                if n == 0 {
                    piece.clone()
                } else {
                    Piece::empty()
                }
            }
            SigmaPresentation::LexBlock(alpha) => Piece::Singleton(Point::block_point(
                alpha.clone(),
                RationalEnumeration::nth(n),
            )),
            SigmaPresentation::Harmonic { base, width } => Piece::Singleton(Point::Rational(
                harmonic_term(base, width, n),
            )),
            SigmaPresentation::InBlock { block, inner } => Piece::BlockSlice {
                block: block.clone(),
                inner: Box::new(inner.piece_at(n)),
            },
        }
    }

    /// Least `n` with `x ∈ piece_at(n)`, or `None` when `x ∉ S`.
    pub fn locate(&self, order: &OrderExpr, x: &Point) -> Result<Option<u64>, SetError> {
        Ok(match self {
            SigmaPresentation::Listed(points) => {
                let mut found = None;
                for (i, p) in points.iter().enumerate() {
                    if compare(order, p, x)? == Ordering::Equal {
                        found = Some(i as u64);
                        break;
                    }
                }
                found
            }
            SigmaPresentation::RationalPrefix(count) => {
                let q = rational_of(order, x)?;
                RationalEnumeration::index_of(q).filter(|i| count.is_none_or(|c| *i < c))
            }
            SigmaPresentation::Single(piece) => piece.contains(order, x)?.then_some(0),
            SigmaPresentation::LexBlock(alpha) => match x.block_index() {
                Some(b) if b == alpha => {
                    let (_, q) = x.components().expect("pair");
                    RationalEnumeration::index_of(rational_of(order, q)?)
                }
                Some(_) => None,
                None => return Err(shape(order, x)),
            },
            SigmaPresentation::Harmonic { base, width } => {
                let q = rational_of(order, x)?;
                let offset = q.sub(base);
                if !offset.is_positive() {
                    None
                } else {
                    // width / (n+1) = offset  ⇔  n + 1 = width / offset
                    let k = width.div(&offset);
                    if k.is_integer() && k.numer() >= &num_bigint::BigInt::from(1) {
                        (k.numer() - 1u32).to_u64()
                    } else {
                        None
                    }
                }
            }
            SigmaPresentation::InBlock { block, inner } => {
                let (first, second) = lex_parts(order)?;
                let (x1, x2) = x.components().ok_or_else(|| shape(order, x))?;
                if compare(first, block, x1)? == Ordering::Equal {
                    inner.locate(second, x2)?
                } else {
                    None
                }
            }
        })
    }

    pub fn contains(&self, order: &OrderExpr, x: &Point) -> Result<bool, SetError> {
        Ok(self.locate(order, x)?.is_some())
    }

    /// Members drawn from the first `per_block` pieces, within the probe
    /// universe.
    pub fn probes(&self, bounds: &ProbeBounds) -> Vec<Point> {
        match self {
            SigmaPresentation::Listed(points) => filter_admitted(points.clone(), bounds),
            SigmaPresentation::Single(piece) => piece.probes(bounds),
            SigmaPresentation::RationalPrefix(count) => RationalEnumeration::new()
                .take(count.map_or(usize::MAX, |c| c as usize))
                .filter(|q| bounds.admits_rational(q))
                .take(if count.is_some() { usize::MAX } else { bounds.per_block })
                .map(Point::Rational)
                .collect(),
            SigmaPresentation::LexBlock(alpha) => bounds
                .rational_grid()
                .into_iter()
                .map(|q| Point::block_point(alpha.clone(), q))
                .collect(),
            SigmaPresentation::Harmonic { base, width } => (0..bounds.per_block as u64)
                .map(|n| harmonic_term(base, width, n))
                .filter(|q| bounds.admits_rational(q))
                .map(Point::Rational)
                .collect(),
            SigmaPresentation::InBlock { block, inner } => inner
                .probes(bounds)
                .into_iter()
                .map(|p| Point::pair(block.clone(), p))
                .collect(),
        }
    }
}

impl fmt::Display for SigmaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaPresentation::Listed(points) => {
                write!(f, "singletons of [")?;
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
            SigmaPresentation::RationalPrefix(Some(c)) => write!(f, "singletons of e(0..{c})"),
            SigmaPresentation::RationalPrefix(None) => write!(f, "singletons of e"),
            SigmaPresentation::Single(piece) => write!(f, "single piece {piece:?}"),
            SigmaPresentation::LexBlock(alpha) => write!(f, "singletons of {{{alpha}}} x e"),
            SigmaPresentation::Harmonic { base, width } => {
                write!(f, "singletons of {base} + {width}/(n+1)")
            }
            SigmaPresentation::InBlock { block, inner } => write!(f, "{{{block}}} x ({inner})"),
        }
    }
}

pub fn harmonic_term(base: &Rational, width: &Rational, n: u64) -> Rational {
    let denom = Rational::new(num_bigint::BigInt::from(n) + 1u32, 1).expect("den 1");
    base.add(&width.div(&denom))
}

/// A conversely well-ordered chain `s₀ > s₁ > …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSpec {
    /// `sₙ = 1/(n+1)` in ℚ, indexed by ω.
    Reciprocals,
    /// An explicit finite chain.
    Points(Vec<Point>),
}

impl ChainSpec {
    /// Rejects chains that are not strictly decreasing, naming the first bad
    /// adjacent pair.
    pub fn validate(&self, order: &OrderExpr) -> Result<(), SetError> {
        match self {
            ChainSpec::Reciprocals => {
                if *order != OrderExpr::Rationals {
                    return Err(SetError::WrongOrder {
                        what: "recip".into(),
                        expected: "Q",
                        found: order.to_string(),
                    });
                }
                Ok(())
            }
            ChainSpec::Points(points) => {
                for p in points {
                    p.validate(order)?;
                }
                for (index, w) in points.windows(2).enumerate() {
                    if compare(order, &w[1], &w[0])? != Ordering::Less {
                        return Err(SetError::ChainNotDecreasing {
                            index,
                            first: w[0].to_string(),
                            second: w[1].to_string(),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    /// Index bound of the chain: its length, or ω.
    pub fn length(&self) -> Ordinal {
        match self {
            ChainSpec::Reciprocals => Ordinal::omega(),
            ChainSpec::Points(points) => Ordinal::finite(points.len() as u64),
        }
    }

    pub fn element(&self, alpha: &Ordinal) -> Option<Point> {
        let n = alpha.as_finite()?;
        match self {
            ChainSpec::Reciprocals => Some(Point::Rational(
                Rational::new(1, num_bigint::BigInt::from(n) + 1u32).expect("positive"),
            )),
            ChainSpec::Points(points) => points.get(usize::try_from(n).ok()?).cloned(),
        }
    }

    pub fn presentation(&self) -> SigmaPresentation {
        match self {
            ChainSpec::Reciprocals => SigmaPresentation::Harmonic {
                base: Rational::zero(),
                width: Rational::integer(1),
            },
            ChainSpec::Points(points) => SigmaPresentation::Listed(points.clone()),
        }
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSpec::Reciprocals => write!(f, "recip"),
            ChainSpec::Points(points) => write_list(f, points),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, points: &[Point]) -> fmt::Result {
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

/// Payoff set descriptors (the set DSL).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescriptor {
    /// `finite{p1, p2, ...}`, presented as singletons in listed order.
    Finite(Vec<Point>),
    /// `enumerated(e, n)`: the first `n` rationals of the fixed enumeration.
    Enumerated(u64),
    /// `fullblocks`: the whole carrier.
    FullBlocks,
    /// `singletonchain(...)`.
    Chain(ChainSpec),
    /// `wellorder(start, step)`: `{start + k·step}` as one piece.
    WellOrder { start: Rational, step: Rational },
    /// `inblock(α, S)`: `{α} × S` in a block order.
    InBlock { block: Ordinal, inner: Box<SetDescriptor> },
    /// `union(<family>)`: the union of a block family.
    Union(FamilyDescriptor),
}

impl SetDescriptor {
    /// Check the descriptor against the ambient order.
    pub fn validate(&self, order: &OrderExpr) -> Result<(), SetError> {
        match self {
            SetDescriptor::Finite(points) => {
                for p in points {
                    p.validate(order)?;
                }
                Ok(())
            }
            SetDescriptor::Enumerated(_) | SetDescriptor::WellOrder { .. } => {
                require_rationals(order, &self.to_string())
            }
            SetDescriptor::FullBlocks => Ok(()),
            SetDescriptor::Chain(chain) => chain.validate(order),
            SetDescriptor::Union(family) => family.build(order).map(|_| ()),
            SetDescriptor::InBlock { block, inner } => {
                let (first, second) = lex_parts(order)?;
                Point::Reversed(block.clone())
                    .conform(first)
                    .or_else(|_| Point::Ordinal(block.clone()).conform(first))?;
                inner.validate(second)
            }
        }
    }

    /// σ-presentation of the set, when one is computable.
    pub fn presentation(&self, order: &OrderExpr) -> Result<SigmaPresentation, SetError> {
        self.validate(order)?;
        Ok(match self {
            SetDescriptor::Finite(points) => SigmaPresentation::Listed(points.clone()),
            SetDescriptor::Enumerated(n) => SigmaPresentation::RationalPrefix(Some(*n)),
            SetDescriptor::FullBlocks => match order {
                OrderExpr::Rationals => SigmaPresentation::RationalPrefix(None),
                other => {
                    return Err(SetError::Unsupported(format!(
                        "no σ-presentation of all of {other}; use `universal` or `blocks(fullblocks)`"
                    )))
                }
            },
            SetDescriptor::Chain(chain) => chain.presentation(),
            SetDescriptor::WellOrder { start, step } => SigmaPresentation::Single(
                Piece::WellOrderRange {
                    start: start.clone(),
                    step: step.clone(),
                },
            ),
            SetDescriptor::Union(family) => {
                return Err(SetError::Unsupported(format!(
                    "no σ-presentation of union({family}); play `blocks({family})`"
                )))
            }
            SetDescriptor::InBlock { block, inner } => {
                let (first, second) = lex_parts(order)?;
                SigmaPresentation::InBlock {
                    block: block_coordinate(first, block)?,
                    inner: Box::new(inner.presentation(second)?),
                }
            }
        })
    }

    pub fn oracle(&self, order: &OrderExpr) -> Result<SetOracle, SetError> {
        self.validate(order)?;
        Ok(SetOracle {
            order: order.clone(),
            descriptor: self.clone(),
        })
    }
}

fn block_coordinate(first: &OrderExpr, block: &Ordinal) -> Result<Point, SetError> {
    Ok(Point::Reversed(block.clone()).conform(first)?)
}

fn require_rationals(order: &OrderExpr, what: &str) -> Result<(), SetError> {
    if *order == OrderExpr::Rationals {
        Ok(())
    } else {
        Err(SetError::WrongOrder {
            what: what.to_string(),
            expected: "Q",
            found: order.to_string(),
        })
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::Finite(points) => {
                write!(f, "finite{{")?;
                write_list(f, points)?;
                write!(f, "}}")
            }
            SetDescriptor::Enumerated(n) => write!(f, "enumerated(e, {n})"),
            SetDescriptor::FullBlocks => write!(f, "fullblocks"),
            SetDescriptor::Chain(chain) => write!(f, "singletonchain({chain})"),
            SetDescriptor::WellOrder { start, step } => write!(f, "wellorder({start}, {step})"),
            SetDescriptor::InBlock { block, inner } => write!(f, "inblock({block}, {inner})"),
            SetDescriptor::Union(family) => write!(f, "union({family})"),
        }
    }
}

/// Membership predicate plus a deterministic member-only probe generator.
/// Used for verification only; strategies never read it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetOracle {
    order: OrderExpr,
    descriptor: SetDescriptor,
}

impl SetOracle {
    pub fn order(&self) -> &OrderExpr {
        &self.order
    }

    pub fn descriptor(&self) -> &SetDescriptor {
        &self.descriptor
    }

    pub fn membership(&self, x: &Point) -> Result<bool, SetError> {
        x.validate(&self.order)?;
        member(&self.order, &self.descriptor, x)
    }

    pub fn gen_probes(&self, bounds: &ProbeBounds) -> Vec<Point> {
        probes(&self.order, &self.descriptor, bounds)
    }
}

fn member(order: &OrderExpr, descriptor: &SetDescriptor, x: &Point) -> Result<bool, SetError> {
    match descriptor {
        SetDescriptor::FullBlocks => Ok(true),
        SetDescriptor::Union(family) => Ok(family.build(order)?.block_of(x)?.is_some()),
        SetDescriptor::Chain(ChainSpec::Points(points)) | SetDescriptor::Finite(points) => {
            Piece::FiniteSet(points.clone()).contains(order, x)
        }
        other => other.presentation(order)?.contains(order, x),
    }
}

fn probes(order: &OrderExpr, descriptor: &SetDescriptor, bounds: &ProbeBounds) -> Vec<Point> {
    match descriptor {
        SetDescriptor::FullBlocks => carrier_grid(order, bounds),
        SetDescriptor::Union(family) => match family.build(order) {
            Ok(f) => f.probes(bounds),
            Err(_) => Vec::new(),
        },
        SetDescriptor::InBlock { block, inner } => match order {
            OrderExpr::Lex(first, second) => match block_coordinate(first, block) {
                Ok(b) if bounds.ordinals.contains(block) => probes(second, inner, bounds)
                    .into_iter()
                    .map(|p| Point::pair(b.clone(), p))
                    .collect(),
                _ => Vec::new(),
            },
            _ => Vec::new(),
        },
        other => match other.presentation(order) {
            Ok(p) => p.probes(bounds),
            Err(_) => Vec::new(),
        },
    }
}

/// Probe grid over the whole carrier: listed blocks × rational grid.
pub fn carrier_grid(order: &OrderExpr, bounds: &ProbeBounds) -> Vec<Point> {
    match order {
        OrderExpr::Rationals => bounds.rational_grid().into_iter().map(Point::Rational).collect(),
        OrderExpr::WellOrder(bound) => bounds
            .ordinals
            .iter()
            .filter(|a| *a < bound)
            .map(|a| Point::Ordinal(a.clone()))
            .collect(),
        OrderExpr::Reversed(bound) => bounds
            .ordinals
            .iter()
            .filter(|a| *a < bound)
            .map(|a| Point::Reversed(a.clone()))
            .collect(),
        OrderExpr::Lex(first, second) => {
            let tail = carrier_grid(second, bounds);
            carrier_grid(first, bounds)
                .into_iter()
                .flat_map(|head| tail.iter().map(move |t| Point::pair(head.clone(), t.clone())))
                .collect()
        }
    }
}
