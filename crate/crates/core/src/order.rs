//! Computable linear orders and their points.
//!
//! The algebra is closed: ℚ, well-orders given by a CNF bound, reversals of
//! well-orders, and lexicographic products. Only ℚ and
//! `lex(rev(ord(δ)), E)` with `E` dense-unbounded are dense without
//! endpoints, and only those carry games.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ordinal::Ordinal;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum OrderExpr {
    Rationals,
    /// The ordinals strictly below the bound.
    WellOrder(Ordinal),
    /// The converse of the well-order below the bound.
    Reversed(Ordinal),
    /// Compare the first coordinate, then the second.
    Lex(Box<OrderExpr>, Box<OrderExpr>),
}

impl OrderExpr {
    pub fn lex(first: OrderExpr, second: OrderExpr) -> Self {
        OrderExpr::Lex(Box::new(first), Box::new(second))
    }

    /// `lex(rev(ord(δ)), Q)`.
    pub fn reversed_blocks(delta: Ordinal) -> Self {
        OrderExpr::lex(OrderExpr::Reversed(delta), OrderExpr::Rationals)
    }

    /// Static density flag: ℚ, or `lex(rev(ord(δ)), E)` with `δ > 0` and `E`
    /// dense-unbounded.
    pub fn is_dense_unbounded(&self) -> bool {
        match self {
            OrderExpr::Rationals => true,
            OrderExpr::Lex(first, second) => {
                matches!(first.as_ref(), OrderExpr::Reversed(bound) if !bound.is_zero())
                    && second.is_dense_unbounded()
            }
            _ => false,
        }
    }

    /// The block bound `δ` when the order is `lex(rev(ord(δ)), Q)`.
    pub fn block_bound(&self) -> Option<&Ordinal> {
        match self {
            OrderExpr::Lex(first, second) => match (first.as_ref(), second.as_ref()) {
                (OrderExpr::Reversed(delta), OrderExpr::Rationals) => Some(delta),
                _ => None,
            },
            _ => None,
        }
    }

    /// Fixed reference point of a dense-unbounded order: `0`, or
    /// `(0, origin(E))` for block products.
    pub fn origin(&self) -> Result<Point, OrderError> {
        match self {
            OrderExpr::Rationals => Ok(Point::Rational(Rational::zero())),
            OrderExpr::Lex(first, second) if self.is_dense_unbounded() => {
                let _ = first;
                Ok(Point::pair(
                    Point::Reversed(Ordinal::zero()),
                    second.origin()?,
                ))
            }
            _ => Err(OrderError::NotDense(self.to_string())),
        }
    }

    /// A random point; ordinal coordinates via [`Ordinal::sample_below`],
    /// rationals as `p/q` with `|p| <= span·q`, `q <= max_den`.
    pub fn sample_point<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        span: i64,
        max_den: i64,
    ) -> Result<Point, OrderError> {
        match self {
            OrderExpr::Rationals => {
                let den = rng.random_range(1..=max_den.max(1));
                let num = rng.random_range(-span * den..=span * den);
                Ok(Point::Rational(Rational::new(num, den).expect("positive")))
            }
            OrderExpr::WellOrder(bound) | OrderExpr::Reversed(bound) => {
                let alpha = Ordinal::sample_below(bound, rng, 4)
                    .ok_or_else(|| OrderError::EmptyOrder(self.to_string()))?;
                Ok(if matches!(self, OrderExpr::WellOrder(_)) {
                    Point::Ordinal(alpha)
                } else {
                    Point::Reversed(alpha)
                })
            }
            OrderExpr::Lex(first, second) => Ok(Point::pair(
                first.sample_point(rng, span, max_den)?,
                second.sample_point(rng, span, max_den)?,
            )),
        }
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderExpr::Rationals => write!(f, "Q"),
            OrderExpr::WellOrder(bound) => write!(f, "ord({bound})"),
            OrderExpr::Reversed(bound) => write!(f, "rev(ord({bound}))"),
            OrderExpr::Lex(a, b) => write!(f, "lex({a}, {b})"),
        }
    }
}

impl fmt::Debug for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderExpr({self})")
    }
}

/// An element of some [`OrderExpr`], shaped like it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Rational(Rational),
    Ordinal(Ordinal),
    /// Element of a reversed well-order; carries the same ordinal.
    Reversed(Ordinal),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn pair(first: Point, second: Point) -> Self {
        Point::Pair(Box::new(first), Box::new(second))
    }

    /// `(α, q)` in `lex(rev(ord(δ)), Q)`.
    pub fn block_point(alpha: Ordinal, q: Rational) -> Self {
        Point::pair(Point::Reversed(alpha), Point::Rational(q))
    }

    pub fn rational(q: Rational) -> Self {
        Point::Rational(q)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Point::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Block index of a `(rev-ordinal, _)` pair.
    pub fn block_index(&self) -> Option<&Ordinal> {
        match self {
            Point::Pair(first, _) => match first.as_ref() {
                Point::Reversed(alpha) | Point::Ordinal(alpha) => Some(alpha),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn components(&self) -> Option<(&Point, &Point)> {
        match self {
            Point::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Check the shape against `order` and re-tag plain ordinal leaves sitting
    /// under a reversal (the JSON encoding drops the reversal wrapper).
    pub fn conform(self, order: &OrderExpr) -> Result<Point, OrderError> {
        conform_at(self, order, &mut String::from("$"))
    }

    pub fn validate(&self, order: &OrderExpr) -> Result<(), OrderError> {
        self.clone().conform(order).map(|_| ())
    }
}

fn conform_at(point: Point, order: &OrderExpr, path: &mut String) -> Result<Point, OrderError> {
    match (point, order) {
        (p @ Point::Rational(_), OrderExpr::Rationals) => Ok(p),
        (Point::Ordinal(a) | Point::Reversed(a), OrderExpr::WellOrder(bound)) => {
            check_below(&a, bound, path)?;
            Ok(Point::Ordinal(a))
        }
        (Point::Ordinal(a) | Point::Reversed(a), OrderExpr::Reversed(bound)) => {
            check_below(&a, bound, path)?;
            Ok(Point::Reversed(a))
        }
        (Point::Pair(x, y), OrderExpr::Lex(first, second)) => {
            let len = path.len();
            path.push_str(".fst");
            let x = conform_at(*x, first, path)?;
            path.truncate(len);
            path.push_str(".snd");
            let y = conform_at(*y, second, path)?;
            path.truncate(len);
            Ok(Point::pair(x, y))
        }
        (p, order) => Err(OrderError::ShapeMismatch {
            path: path.clone(),
            expected: order.to_string(),
            found: p.to_string(),
        }),
    }
}

fn check_below(a: &Ordinal, bound: &Ordinal, path: &str) -> Result<(), OrderError> {
    if a < bound {
        Ok(())
    } else {
        Err(OrderError::OrdinalOutOfRange {
            path: path.to_string(),
            value: a.clone(),
            bound: bound.clone(),
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Rational(q) => write!(f, "{q}"),
            Point::Ordinal(a) | Point::Reversed(a) => write!(f, "{a}"),
            Point::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

// JSON: rational {"num","den"}, ordinal {"cnf"}, pair {"fst","snd"}; the
// reversal wrapper is transparent.
#[derive(Serialize)]
struct PairRef<'a> {
    fst: &'a Point,
    snd: &'a Point,
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Rational(q) => q.serialize(serializer),
            Point::Ordinal(a) | Point::Reversed(a) => a.serialize(serializer),
            Point::Pair(fst, snd) => PairRef { fst, snd }.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    /// Produces an unconformed point (no reversal tags); call
    /// [`Point::conform`] with the ambient order.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        point_from_value(&value).map_err(D::Error::custom)
    }
}

fn point_from_value(value: &serde_json::Value) -> Result<Point, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("point must be an object, got {value}"))?;
    if obj.contains_key("fst") || obj.contains_key("snd") {
        let fst = obj.get("fst").ok_or("pair without `fst`")?;
        let snd = obj.get("snd").ok_or("pair without `snd`")?;
        return Ok(Point::pair(point_from_value(fst)?, point_from_value(snd)?));
    }
    if obj.contains_key("cnf") {
        let a: Ordinal = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        return Ok(Point::Ordinal(a));
    }
    if obj.contains_key("num") {
        let q: Rational = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        return Ok(Point::Rational(q));
    }
    Err(format!("unrecognised point encoding {value}"))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("shape mismatch at {path}: expected a point of {expected}, found `{found}`")]
    ShapeMismatch {
        path: String,
        expected: String,
        found: String,
    },
    #[error("ordinal {value} at {path} is not below the bound {bound}")]
    OrdinalOutOfRange {
        path: String,
        value: Ordinal,
        bound: Ordinal,
    },
    #[error("order {0} is not dense without endpoints")]
    NotDense(String),
    #[error("order {0} has no elements")]
    EmptyOrder(String),
    #[error("between needs lower < upper, got {lower} and {upper}")]
    NotIncreasing { lower: String, upper: String },
}

/// Strict total order on points of `order`.
pub fn compare(order: &OrderExpr, x: &Point, y: &Point) -> Result<Ordering, OrderError> {
    compare_at(order, x, y, &mut String::from("$"))
}

fn compare_at(
    order: &OrderExpr,
    x: &Point,
    y: &Point,
    path: &mut String,
) -> Result<Ordering, OrderError> {
    let mismatch = |p: &Point, path: &str| OrderError::ShapeMismatch {
        path: path.to_string(),
        expected: order.to_string(),
        found: p.to_string(),
    };
    match order {
        OrderExpr::Rationals => match (x, y) {
            (Point::Rational(a), Point::Rational(b)) => Ok(a.cmp(b)),
            (Point::Rational(_), other) | (other, _) => Err(mismatch(other, path)),
        },
        OrderExpr::WellOrder(_) => match (x, y) {
            (Point::Ordinal(a), Point::Ordinal(b)) => Ok(a.cmp(b)),
            (Point::Ordinal(_), other) | (other, _) => Err(mismatch(other, path)),
        },
        OrderExpr::Reversed(_) => match (x, y) {
            (Point::Reversed(a), Point::Reversed(b)) => Ok(b.cmp(a)),
            (Point::Reversed(_), other) | (other, _) => Err(mismatch(other, path)),
        },
        OrderExpr::Lex(first, second) => match (x, y) {
            (Point::Pair(x1, x2), Point::Pair(y1, y2)) => {
                let len = path.len();
                path.push_str(".fst");
                let head = compare_at(first, x1, y1, path)?;
                path.truncate(len);
                if head != Ordering::Equal {
                    // Validate the other coordinate's shape anyway.
                    path.push_str(".snd");
                    compare_at(second, x2, x2, path)?;
                    compare_at(second, y2, y2, path)?;
                    path.truncate(len);
                    return Ok(head);
                }
                path.push_str(".snd");
                let tail = compare_at(second, x2, y2, path)?;
                path.truncate(len);
                Ok(tail)
            }
            (Point::Pair(..), other) | (other, _) => Err(mismatch(other, path)),
        },
    }
}

pub fn less(order: &OrderExpr, x: &Point, y: &Point) -> Result<bool, OrderError> {
    Ok(compare(order, x, y)? == Ordering::Less)
}

/// Deterministic `c` with `a < c < b`.
///
/// ℚ: mediant of the reduced forms. Block products: same block recurses on
/// the second coordinate; different blocks answer `(α_a, above(p_a))`, which
/// lies below every point of any higher block.
pub fn between(order: &OrderExpr, a: &Point, b: &Point) -> Result<Point, OrderError> {
    if !order.is_dense_unbounded() {
        return Err(OrderError::NotDense(order.to_string()));
    }
    if compare(order, a, b)? != Ordering::Less {
        return Err(OrderError::NotIncreasing {
            lower: a.to_string(),
            upper: b.to_string(),
        });
    }
    Ok(between_unchecked(order, a, b))
}

fn between_unchecked(order: &OrderExpr, a: &Point, b: &Point) -> Point {
    match (order, a, b) {
        (OrderExpr::Rationals, Point::Rational(p), Point::Rational(q)) => {
            Point::Rational(p.mediant(q))
        }
        (OrderExpr::Lex(_, second), Point::Pair(a1, a2), Point::Pair(b1, b2)) => {
            if a1 == b1 {
                Point::Pair(a1.clone(), Box::new(between_unchecked(second, a2, b2)))
            } else {
                Point::Pair(a1.clone(), Box::new(above_unchecked(second, a2)))
            }
        }
        _ => unreachable!("between on validated dense order"),
    }
}

/// `a` moved up by one in its final rational coordinate.
pub fn point_above(order: &OrderExpr, a: &Point) -> Result<Point, OrderError> {
    if !order.is_dense_unbounded() {
        return Err(OrderError::NotDense(order.to_string()));
    }
    a.validate(order)?;
    Ok(above_unchecked(order, a))
}

/// `a` moved down by one in its final rational coordinate.
pub fn point_below(order: &OrderExpr, a: &Point) -> Result<Point, OrderError> {
    if !order.is_dense_unbounded() {
        return Err(OrderError::NotDense(order.to_string()));
    }
    a.validate(order)?;
    Ok(below_unchecked(order, a))
}

fn above_unchecked(order: &OrderExpr, a: &Point) -> Point {
    shift_last(order, a, Rational::succ)
}

fn below_unchecked(order: &OrderExpr, a: &Point) -> Point {
    shift_last(order, a, Rational::pred)
}

fn shift_last(order: &OrderExpr, a: &Point, step: fn(&Rational) -> Rational) -> Point {
    match (order, a) {
        (OrderExpr::Rationals, Point::Rational(q)) => Point::Rational(step(q)),
        (OrderExpr::Lex(_, second), Point::Pair(x, y)) => {
            Point::Pair(x.clone(), Box::new(shift_last(second, y, step)))
        }
        _ => unreachable!("shift on validated dense order"),
    }
}

/// `between(a, b)` with `None` standing for the missing upper bound.
pub fn between_or_above(
    order: &OrderExpr,
    a: &Point,
    b: Option<&Point>,
) -> Result<Point, OrderError> {
    match b {
        Some(b) => between(order, a, b),
        None => point_above(order, a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn lex_w() -> OrderExpr {
        OrderExpr::reversed_blocks(Ordinal::omega())
    }

    fn bp(alpha: u64, s: &str) -> Point {
        Point::block_point(Ordinal::finite(alpha), q(s))
    }

    #[test]
    fn lex_compare_block_rule() {
        let order = lex_w();
        assert_eq!(compare(&order, &bp(3, "1/2"), &bp(2, "7")), Ok(Ordering::Less));
        assert_eq!(compare(&order, &bp(5, "1/2"), &bp(5, "3/4")), Ok(Ordering::Less));
        assert_eq!(compare(&order, &bp(5, "1/2"), &bp(5, "1/2")), Ok(Ordering::Equal));
        assert_eq!(compare(&order, &bp(0, "-100"), &bp(9, "100")), Ok(Ordering::Greater));
    }

    #[test]
    fn shape_mismatch_names_subtree() {
        let order = lex_w();
        let bad = Point::pair(Point::Reversed(Ordinal::finite(1)), Point::Ordinal(Ordinal::zero()));
        match compare(&order, &bp(1, "0"), &bad) {
            Err(OrderError::ShapeMismatch { path, .. }) => assert_eq!(path, "$.snd"),
            other => panic!("unexpected {other:?}"),
        }
        let out_of_range = Point::block_point(Ordinal::omega(), q("0"));
        assert!(matches!(
            out_of_range.validate(&order),
            Err(OrderError::OrdinalOutOfRange { .. })
        ));
    }

    #[test]
    fn between_examples() {
        let order = OrderExpr::Rationals;
        let zero = Point::Rational(q("0"));
        let one = Point::Rational(q("1"));
        assert_eq!(between(&order, &zero, &one).unwrap(), Point::Rational(q("1/2")));
        assert!(matches!(
            between(&order, &one, &zero),
            Err(OrderError::NotIncreasing { .. })
        ));

        let order = lex_w();
        let c = between(&order, &bp(5, "0"), &bp(5, "1")).unwrap();
        assert_eq!(c, bp(5, "1/2"));
        let c = between(&order, &bp(5, "0"), &bp(2, "0")).unwrap();
        assert_eq!(c, bp(5, "1"));
        assert!(less(&order, &bp(5, "0"), &c).unwrap() && less(&order, &c, &bp(2, "0")).unwrap());
    }

    #[test]
    fn unbounded_steps() {
        assert_eq!(
            point_above(&OrderExpr::Rationals, &Point::Rational(q("3/2"))).unwrap(),
            Point::Rational(q("5/2"))
        );
        assert_eq!(point_below(&lex_w(), &bp(0, "0")).unwrap(), bp(0, "-1"));
    }

    #[test]
    fn density_flag() {
        assert!(OrderExpr::Rationals.is_dense_unbounded());
        assert!(lex_w().is_dense_unbounded());
        assert!(OrderExpr::lex(OrderExpr::Reversed(Ordinal::finite(2)), lex_w()).is_dense_unbounded());
        assert!(!OrderExpr::WellOrder(Ordinal::omega()).is_dense_unbounded());
        assert!(!OrderExpr::reversed_blocks(Ordinal::zero()).is_dense_unbounded());
        assert!(!OrderExpr::lex(OrderExpr::WellOrder(Ordinal::omega()), OrderExpr::Rationals)
            .is_dense_unbounded());
        let wo = OrderExpr::WellOrder(Ordinal::omega());
        let p = Point::Ordinal(Ordinal::finite(1));
        assert!(matches!(between(&wo, &p, &p), Err(OrderError::NotDense(_))));
    }

    #[test]
    fn point_json_is_reversal_transparent() {
        let p = bp(2, "1/2");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"fst":{"cnf":[[{"cnf":[]},2]]},"snd":{"num":"1","den":"2"}}"#
        );
        let raw: Point = serde_json::from_str(&json).unwrap();
        assert_ne!(raw, p);
        assert_eq!(raw.conform(&lex_w()).unwrap(), p);
    }
}
