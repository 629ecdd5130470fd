//! Block families `{S_α : α < γ}` with `S_β < S_α` whenever `α < β`.
//!
//! Unbounded search over infinite blocks is not decidable in general, so a
//! family supplies the two queries the block strategy needs as
//! capabilities: the least block reaching below a point, and a separating
//! move below every lower-indexed block.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::order::{between_or_above, compare, less, OrderExpr, Point};
use crate::ordinal::Ordinal;
use crate::rational::Rational;
use crate::sets::{harmonic_term, ChainSpec, ProbeBounds, SetError, SigmaPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub least_block_below: bool,
    pub separator: bool,
}

impl Capabilities {
    pub const NONE: Capabilities = Capabilities {
        least_block_below: false,
        separator: false,
    };
    pub const ALL: Capabilities = Capabilities {
        least_block_below: true,
        separator: true,
    };
}

pub trait BlockFamily: fmt::Debug + Send + Sync {
    fn order(&self) -> &OrderExpr;

    /// `γ`.
    fn index_bound(&self) -> &Ordinal;

    /// σ-presentation of `S_α`; block sub-strategies play sigma over it.
    fn block(&self, alpha: &Ordinal) -> Result<SigmaPresentation, SetError>;

    /// Family DSL text.
    fn describe(&self) -> String;

    fn capabilities(&self) -> Capabilities {
        Capabilities::NONE
    }

    fn block_contains(&self, alpha: &Ordinal, x: &Point) -> Result<bool, SetError> {
        self.block(alpha)?.contains(self.order(), x)
    }

    /// Least `α < γ` such that some `y ∈ S_α` has `y < a`, with such a `y`.
    fn least_block_below(&self, a: &Point) -> Result<Option<(Ordinal, Point)>, SetError> {
        let _ = a;
        Err(SetError::MissingCapability {
            family: self.describe(),
            capability: "least-block-below",
        })
    }

    /// A point `b` with `lower < b < upper` and `b <= y` for every `y` in
    /// every block indexed below `bound`; `None` when no legal move does that.
    fn separator(
        &self,
        bound: &Ordinal,
        lower: &Point,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        let _ = (bound, lower, upper);
        Err(SetError::MissingCapability {
            family: self.describe(),
            capability: "separator",
        })
    }

    /// Index of the block containing `x`, if any.
    fn block_of(&self, x: &Point) -> Result<Option<Ordinal>, SetError> {
        let _ = x;
        Err(SetError::MissingCapability {
            family: self.describe(),
            capability: "block-of",
        })
    }

    /// Members of the listed blocks, for probing.
    fn probes(&self, bounds: &ProbeBounds) -> Vec<Point> {
        let mut out = Vec::new();
        for alpha in &bounds.ordinals {
            if alpha < self.index_bound() {
                if let Ok(p) = self.block(alpha) {
                    out.extend(p.probes(bounds));
                }
            }
        }
        out
    }

    fn check_index(&self, alpha: &Ordinal) -> Result<(), SetError> {
        if alpha < self.index_bound() {
            Ok(())
        } else {
            Err(SetError::BlockOutOfRange {
                index: alpha.clone(),
                bound: self.index_bound().clone(),
            })
        }
    }
}

/// Separator for families whose lower-indexed blocks all sit at or above an
/// inclusive cap: legal iff `lower < cap`.
fn capped_separator(
    order: &OrderExpr,
    cap: Option<&Point>,
    lower: &Point,
    upper: Option<&Point>,
) -> Result<Option<Point>, SetError> {
    let Some(cap) = cap else {
        return Ok(Some(between_or_above(order, lower, upper)?));
    };
    if !less(order, lower, cap)? {
        return Ok(None);
    }
    let ceiling = match upper {
        Some(u) if less(order, u, cap)? => u,
        _ => cap,
    };
    Ok(Some(between_or_above(order, lower, Some(ceiling))?))
}

/// `S_α = {α} × ℚ` in `lex(rev(ord(δ)), Q)`, `γ = δ`.
#[derive(Debug, Clone)]
pub struct FullLexBlocks {
    order: OrderExpr,
    delta: Ordinal,
}

/// Full-block family of `lex(rev(ord(δ)), Q)`.
pub fn make_full_lex_blocks(order: &OrderExpr) -> Result<FullLexBlocks, SetError> {
    let delta = order.block_bound().ok_or_else(|| SetError::WrongOrder {
        what: "fullblocks".into(),
        expected: "lex(rev(ord(δ)), Q)",
        found: order.to_string(),
    })?;
    if delta.is_zero() {
        return Err(SetError::Unsupported("block bound must be positive".into()));
    }
    Ok(FullLexBlocks {
        order: order.clone(),
        delta: delta.clone(),
    })
}

impl BlockFamily for FullLexBlocks {
    fn order(&self) -> &OrderExpr {
        &self.order
    }

    fn index_bound(&self) -> &Ordinal {
        &self.delta
    }

    fn block(&self, alpha: &Ordinal) -> Result<SigmaPresentation, SetError> {
        self.check_index(alpha)?;
        Ok(SigmaPresentation::LexBlock(alpha.clone()))
    }

    fn describe(&self) -> String {
        "fullblocks".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::ALL
    }

    fn block_contains(&self, alpha: &Ordinal, x: &Point) -> Result<bool, SetError> {
        self.check_index(alpha)?;
        x.validate(&self.order)?;
        Ok(x.block_index() == Some(alpha))
    }

    fn block_of(&self, x: &Point) -> Result<Option<Ordinal>, SetError> {
        x.validate(&self.order)?;
        Ok(x.block_index().cloned())
    }

    // Blocks below a's index sit entirely above a; a's own block reaches
    // below it.
    fn least_block_below(&self, a: &Point) -> Result<Option<(Ordinal, Point)>, SetError> {
        a.validate(&self.order)?;
        let (head, tail) = a.components().expect("validated pair");
        let alpha = a.block_index().expect("validated pair").clone();
        let q = tail.as_rational().expect("validated rational");
        let witness = Point::Pair(Box::new(head.clone()), Box::new(Point::Rational(q.pred())));
        Ok(Some((alpha, witness)))
    }

    // b sits below every block indexed < bound iff its own index is >= bound.
    fn separator(
        &self,
        bound: &Ordinal,
        lower: &Point,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        lower.validate(&self.order)?;
        let block = lower.block_index().expect("validated pair");
        if block < bound {
            return Ok(None);
        }
        Ok(Some(between_or_above(&self.order, lower, upper)?))
    }
}

/// Singleton blocks `S_α = {s_α}` of a conversely well-ordered chain.
#[derive(Debug, Clone)]
pub struct ChainBlocks {
    order: OrderExpr,
    chain: ChainSpec,
    length: Ordinal,
}

impl ChainBlocks {
    pub fn new(order: &OrderExpr, chain: ChainSpec) -> Result<Self, SetError> {
        chain.validate(order)?;
        Ok(ChainBlocks {
            order: order.clone(),
            length: chain.length(),
            chain,
        })
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    /// Infimum of the blocks indexed below `bound`, attained or not; every
    /// such block element is `>=` it.
    fn cap(&self, bound: &Ordinal) -> Option<Point> {
        if bound.is_zero() {
            return None;
        }
        match bound.as_finite() {
            Some(n) => self.chain.element(&Ordinal::finite(n - 1)),
            None => Some(Point::Rational(Rational::zero())),
        }
    }
}

impl BlockFamily for ChainBlocks {
    fn order(&self) -> &OrderExpr {
        &self.order
    }

    fn index_bound(&self) -> &Ordinal {
        &self.length
    }

    fn block(&self, alpha: &Ordinal) -> Result<SigmaPresentation, SetError> {
        self.check_index(alpha)?;
        let s = self.chain.element(alpha).expect("index checked");
        Ok(SigmaPresentation::Listed(vec![s]))
    }

    fn describe(&self) -> String {
        format!("chain({})", self.chain)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::ALL
    }

    fn block_of(&self, x: &Point) -> Result<Option<Ordinal>, SetError> {
        x.validate(&self.order)?;
        Ok(self
            .chain
            .presentation()
            .locate(&self.order, x)?
            .map(Ordinal::finite))
    }

    fn least_block_below(&self, a: &Point) -> Result<Option<(Ordinal, Point)>, SetError> {
        a.validate(&self.order)?;
        match &self.chain {
            ChainSpec::Reciprocals => {
                let q = a.as_rational().expect("validated rational");
                if !q.is_positive() {
                    return Ok(None);
                }
                // 1/(n+1) < q  ⇔  n + 1 > 1/q
                let n = q.recip().floor();
                let n: u64 = n.try_into().map_err(|_| {
                    SetError::Unsupported(format!("chain index for {q} overflows"))
                })?;
                let alpha = Ordinal::finite(n);
                let witness = self.chain.element(&alpha).expect("recip total");
                Ok(Some((alpha, witness)))
            }
            ChainSpec::Points(points) => {
                for (i, s) in points.iter().enumerate() {
                    if compare(&self.order, s, a)? == Ordering::Less {
                        return Ok(Some((Ordinal::finite(i as u64), s.clone())));
                    }
                }
                Ok(None)
            }
        }
    }

    fn separator(
        &self,
        bound: &Ordinal,
        lower: &Point,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        lower.validate(&self.order)?;
        capped_separator(&self.order, self.cap(bound).as_ref(), lower, upper)
    }
}

/// Harmonic blocks over ℚ: with `c_k = -k/(k+1)` and `c_{-1} = 1`, block
/// `k < γ` is `{c_k + (c_{k-1} - c_k)/(n+1) : n ∈ ℕ}` ⊂ `(c_k, c_{k-1}]`.
/// `γ <= ω`. Block 0 is `{1/n : n >= 1}`. A separating move against block
/// `k-1` must be `<= c_{k-1}`, which fails exactly when Player I sits on
/// one of the `c`'s, so scripted play can force descents.
#[derive(Debug, Clone)]
pub struct TelescopingBlocks {
    gamma: Ordinal,
}

impl TelescopingBlocks {
    pub fn new(gamma: Ordinal) -> Result<Self, SetError> {
        if gamma.is_zero() || gamma > Ordinal::omega() {
            return Err(SetError::Unsupported(format!(
                "telescoping blocks need 0 < γ <= w, got {gamma}"
            )));
        }
        Ok(TelescopingBlocks { gamma })
    }

    /// `c_k`; `k = -1` gives 1.
    pub fn floor_of(k: i64) -> Rational {
        if k < 0 {
            Rational::integer(1)
        } else {
            Rational::new(-k, k + 1).expect("positive")
        }
    }

    fn base_and_width(k: u64) -> (Rational, Rational) {
        let base = Self::floor_of(k as i64);
        let width = Self::floor_of(k as i64 - 1).sub(&base);
        (base, width)
    }

    /// Least `k < γ` with `c_k < q`; then `q ∈ (c_k, c_{k-1}]` when `q <= 1`.
    fn slot(&self, q: &Rational) -> Option<u64> {
        let k: u64 = if q.is_positive() {
            0
        } else {
            let t = Rational::zero().sub(q);
            if t >= Rational::integer(1) {
                return None;
            }
            let ratio = t.div(&Rational::integer(1).sub(&t));
            let k = ratio.floor() + num_bigint::BigInt::one();
            u64::try_from(k).ok()?
        };
        (Ordinal::finite(k) < self.gamma).then_some(k)
    }

    fn cap(&self, bound: &Ordinal) -> Option<Point> {
        if bound.is_zero() {
            return None;
        }
        Some(Point::Rational(match bound.as_finite() {
            Some(n) => Self::floor_of(n as i64 - 1),
            None => Rational::integer(-1),
        }))
    }
}

static RATIONALS: OrderExpr = OrderExpr::Rationals;

impl BlockFamily for TelescopingBlocks {
    fn order(&self) -> &OrderExpr {
        &RATIONALS
    }

    fn index_bound(&self) -> &Ordinal {
        &self.gamma
    }

    fn block(&self, alpha: &Ordinal) -> Result<SigmaPresentation, SetError> {
        self.check_index(alpha)?;
        let k = alpha.as_finite().expect("below w");
        let (base, width) = Self::base_and_width(k);
        Ok(SigmaPresentation::Harmonic { base, width })
    }

    fn describe(&self) -> String {
        format!("telescoping({})", self.gamma)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::ALL
    }

    fn block_of(&self, x: &Point) -> Result<Option<Ordinal>, SetError> {
        x.validate(&RATIONALS)?;
        let q = x.as_rational().expect("validated rational");
        if *q > Rational::integer(1) {
            return Ok(None);
        }
        let Some(k) = self.slot(q) else {
            return Ok(None);
        };
        let alpha = Ordinal::finite(k);
        Ok(self.block(&alpha)?.contains(&RATIONALS, x)?.then_some(alpha))
    }

    fn least_block_below(&self, a: &Point) -> Result<Option<(Ordinal, Point)>, SetError> {
        a.validate(&RATIONALS)?;
        let q = a.as_rational().expect("validated rational");
        let Some(k) = self.slot(q) else {
            return Ok(None);
        };
        let alpha = Ordinal::finite(k);
        let (base, width) = Self::base_and_width(k);
        // base + width/(n+1) < q  ⇔  n + 1 > width / (q - base)
        let n = width.div(&q.sub(&base)).floor();
        let n: u64 = n
            .try_into()
            .map_err(|_| SetError::Unsupported(format!("witness index for {q} overflows")))?;
        let witness = Point::Rational(harmonic_term(&base, &width, n));
        Ok(Some((alpha, witness)))
    }

    fn separator(
        &self,
        bound: &Ordinal,
        lower: &Point,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        lower.validate(&RATIONALS)?;
        capped_separator(&RATIONALS, self.cap(bound).as_ref(), lower, upper)
    }
}

/// `γ` empty blocks; every query is vacuous.
#[derive(Debug, Clone)]
pub struct EmptyBlocks {
    order: OrderExpr,
    gamma: Ordinal,
}

impl EmptyBlocks {
    pub fn new(order: &OrderExpr, gamma: Ordinal) -> Self {
        EmptyBlocks {
            order: order.clone(),
            gamma,
        }
    }
}

impl BlockFamily for EmptyBlocks {
    fn order(&self) -> &OrderExpr {
        &self.order
    }

    fn index_bound(&self) -> &Ordinal {
        &self.gamma
    }

    fn block(&self, alpha: &Ordinal) -> Result<SigmaPresentation, SetError> {
        self.check_index(alpha)?;
        Ok(SigmaPresentation::Listed(Vec::new()))
    }

    fn describe(&self) -> String {
        format!("empty({})", self.gamma)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::ALL
    }

    fn block_of(&self, x: &Point) -> Result<Option<Ordinal>, SetError> {
        x.validate(&self.order)?;
        Ok(None)
    }

    fn least_block_below(&self, a: &Point) -> Result<Option<(Ordinal, Point)>, SetError> {
        a.validate(&self.order)?;
        Ok(None)
    }

    fn separator(
        &self,
        _bound: &Ordinal,
        lower: &Point,
        upper: Option<&Point>,
    ) -> Result<Option<Point>, SetError> {
        Ok(Some(between_or_above(&self.order, lower, upper)?))
    }
}

/// Family DSL: `fullblocks`, `chain(<chain>)`, `telescoping(<γ>)`,
/// `empty(<γ>)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDescriptor {
    FullBlocks,
    Chain(ChainSpec),
    Telescoping(Ordinal),
    Empty(Ordinal),
}

impl FamilyDescriptor {
    pub fn build(&self, order: &OrderExpr) -> Result<Arc<dyn BlockFamily>, SetError> {
        Ok(match self {
            FamilyDescriptor::FullBlocks => Arc::new(make_full_lex_blocks(order)?),
            FamilyDescriptor::Chain(chain) => Arc::new(ChainBlocks::new(order, chain.clone())?),
            FamilyDescriptor::Telescoping(gamma) => {
                if *order != OrderExpr::Rationals {
                    return Err(SetError::WrongOrder {
                        what: "telescoping".into(),
                        expected: "Q",
                        found: order.to_string(),
                    });
                }
                Arc::new(TelescopingBlocks::new(gamma.clone())?)
            }
            FamilyDescriptor::Empty(gamma) => Arc::new(EmptyBlocks::new(order, gamma.clone())),
        })
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::FullBlocks => write!(f, "fullblocks"),
            FamilyDescriptor::Chain(chain) => write!(f, "chain({chain})"),
            FamilyDescriptor::Telescoping(gamma) => write!(f, "telescoping({gamma})"),
            FamilyDescriptor::Empty(gamma) => write!(f, "empty({gamma})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rp(s: &str) -> Point {
        Point::Rational(q(s))
    }

    fn bp(alpha: u64, s: &str) -> Point {
        Point::block_point(Ordinal::finite(alpha), q(s))
    }

    fn lex_w() -> OrderExpr {
        OrderExpr::reversed_blocks(Ordinal::omega())
    }

    #[test]
    fn full_lex_least_block() {
        let fam = make_full_lex_blocks(&lex_w()).unwrap();
        assert_eq!(
            fam.least_block_below(&bp(5, "0")).unwrap(),
            Some((Ordinal::finite(5), bp(5, "-1")))
        );
        assert_eq!(
            fam.least_block_below(&bp(0, "3/2")).unwrap(),
            Some((Ordinal::zero(), bp(0, "1/2")))
        );
        assert_eq!(fam.index_bound(), &Ordinal::omega());
    }

    #[test]
    fn full_lex_separator() {
        let order = lex_w();
        let fam = make_full_lex_blocks(&order).unwrap();
        let b = fam
            .separator(&Ordinal::finite(5), &bp(5, "0"), Some(&bp(2, "0")))
            .unwrap()
            .unwrap();
        assert_eq!(b, bp(5, "1"));
        // below every probe of blocks 0..4
        for alpha in 0..5 {
            for s in ["-100", "-1", "0", "1/2", "7"] {
                assert!(less(&order, &b, &bp(alpha, s)).unwrap());
            }
        }
        assert_eq!(
            fam.separator(&Ordinal::zero(), &bp(5, "0"), Some(&bp(2, "0"))).unwrap(),
            Some(bp(5, "1"))
        );
        assert_eq!(fam.separator(&Ordinal::finite(6), &bp(5, "0"), None).unwrap(), None);
        assert_eq!(fam.separator(&Ordinal::omega(), &bp(5, "0"), None).unwrap(), None);
    }

    #[test]
    fn full_lex_blocks_reverse_ordered() {
        let order = lex_w();
        let fam = make_full_lex_blocks(&order).unwrap();
        assert!(less(&order, &bp(7, "100"), &bp(2, "-100")).unwrap());
        assert!(make_full_lex_blocks(&OrderExpr::Rationals).is_err());
        let block3 = fam.block(&Ordinal::finite(3)).unwrap();
        let firsts: Vec<Point> = (0..4).map(|n| match block3.piece_at(n) {
            crate::sets::Piece::Singleton(p) => p,
            other => panic!("{other:?}"),
        }).collect();
        assert_eq!(firsts, vec![bp(3, "0"), bp(3, "1"), bp(3, "-1"), bp(3, "2")]);
        assert!(fam.block(&Ordinal::omega()).is_err());
    }

    #[test]
    fn telescoping_geometry() {
        let fam = TelescopingBlocks::new(Ordinal::omega()).unwrap();
        let order = OrderExpr::Rationals;
        // first few elements of blocks 0..4 are reverse-ordered
        for k in 0..4u64 {
            let hi = fam.block(&Ordinal::finite(k)).unwrap();
            let lo = fam.block(&Ordinal::finite(k + 1)).unwrap();
            for n in 0..6 {
                for m in 0..6 {
                    let (crate::sets::Piece::Singleton(x), crate::sets::Piece::Singleton(y)) =
                        (lo.piece_at(n), hi.piece_at(m))
                    else {
                        panic!()
                    };
                    assert!(less(&order, &x, &y).unwrap(), "{x} !< {y}");
                }
            }
        }
        // block 0 is {1/n : n >= 1}
        assert_eq!(fam.block(&Ordinal::zero()).unwrap().piece_at(2), crate::sets::Piece::Singleton(rp("1/3")));
    }

    #[test]
    fn telescoping_least_block_matches_scan() {
        let fam = TelescopingBlocks::new(Ordinal::omega()).unwrap();
        let order = OrderExpr::Rationals;
        for a in ["-3/4", "-2/3", "-7/10", "-1/2", "0", "1/3", "-1", "-5/4", "-99/100"] {
            let a = rp(a);
            let got = fam.least_block_below(&a).unwrap();
            // brute force: smallest k < 200 with some of the first 2000
            // elements below a
            let brute = (0..200u64).find(|k| {
                let (base, width) = TelescopingBlocks::base_and_width(*k);
                (0..2000).any(|n| less(&order, &Point::Rational(harmonic_term(&base, &width, n)), &a).unwrap())
            });
            assert_eq!(got.as_ref().map(|(k, _)| k.as_finite().unwrap()), brute, "a = {a}");
            if let Some((k, w)) = got {
                assert!(fam.block_contains(&k, &w).unwrap());
                assert!(less(&order, &w, &a).unwrap());
            }
        }
    }

    #[test]
    fn separator_absent_when_block_zero_is_reciprocals() {
        let fam = TelescopingBlocks::new(Ordinal::omega()).unwrap();
        let got = fam.separator(&Ordinal::finite(1), &rp("0"), Some(&rp("1"))).unwrap();
        assert_eq!(got, None);
        // brute force: no rational of denominator <= 16 in (0, 1) is <= every 1/n
        for den in 1..=16i64 {
            for num in 1..den {
                let b = q(&format!("{num}/{den}"));
                let below_all = (1..=64).all(|n| b <= q(&format!("1/{n}")));
                assert!(!below_all);
            }
        }
        assert_eq!(
            fam.separator(&Ordinal::zero(), &rp("0"), Some(&rp("1"))).unwrap(),
            Some(rp("1/2"))
        );
    }

    #[test]
    fn chain_queries() {
        let fam = ChainBlocks::new(&OrderExpr::Rationals, ChainSpec::Reciprocals).unwrap();
        assert_eq!(
            fam.least_block_below(&rp("1/3")).unwrap(),
            Some((Ordinal::finite(3), rp("1/4")))
        );
        assert_eq!(
            fam.least_block_below(&rp("2/5")).unwrap(),
            Some((Ordinal::finite(2), rp("1/3")))
        );
        assert_eq!(fam.least_block_below(&rp("0")).unwrap(), None);
        // every element is positive: early win below 0
        assert_eq!(
            fam.separator(&Ordinal::omega(), &rp("-5/6"), None).unwrap(),
            Some(rp("-5/7"))
        );
    }

    #[test]
    fn empty_family_is_vacuous() {
        let fam = EmptyBlocks::new(&OrderExpr::Rationals, Ordinal::finite(3));
        assert_eq!(fam.least_block_below(&rp("5")).unwrap(), None);
        assert_eq!(fam.separator(&Ordinal::finite(3), &rp("0"), None).unwrap(), Some(rp("1")));
    }

    #[derive(Debug)]
    struct Opaque(OrderExpr, Ordinal);

    impl BlockFamily for Opaque {
        fn order(&self) -> &OrderExpr {
            &self.0
        }
        fn index_bound(&self) -> &Ordinal {
            &self.1
        }
        fn block(&self, _: &Ordinal) -> Result<SigmaPresentation, SetError> {
            Ok(SigmaPresentation::Listed(vec![]))
        }
        fn describe(&self) -> String {
            "opaque".into()
        }
    }

    #[test]
    fn missing_capability_is_reported() {
        let fam = Opaque(OrderExpr::Rationals, Ordinal::finite(1));
        assert!(matches!(
            fam.least_block_below(&rp("0")),
            Err(SetError::MissingCapability { capability: "least-block-below", .. })
        ));
        assert!(matches!(
            fam.separator(&Ordinal::zero(), &rp("0"), None),
            Err(SetError::MissingCapability { capability: "separator", .. })
        ));
    }
}
