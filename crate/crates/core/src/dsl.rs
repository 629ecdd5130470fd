//! Text syntax for orders, points, ordinals, payoff sets, block families and
//! strategy descriptors.
//!
//! ```text
//! order    := "Q" | "ord(" cnf ")" | "rev(" order ")" | "lex(" order "," order ")"
//! cnf      := term ("+" term)*
//! term     := nat | "w" ("^" exp)? ("*" nat)?
//! exp      := nat | "w" ("^" exp)? | "(" cnf ")"
//! point    := rational | cnf | "(" point "," point ")"
//! set      := "finite{" points "}" | "enumerated(e," nat ")" | "fullblocks"
//!           | "singletonchain(" chain ")" | "wellorder(" rational "," rational ")"
//!           | "inblock(" cnf "," set ")" | "union(" family ")"
//! chain    := "recip" | points
//! family   := "fullblocks" | "chain(" chain ")" | "telescoping(" cnf ")" | "empty(" cnf ")"
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::family::FamilyDescriptor;
use crate::order::{OrderError, OrderExpr, Point};
use crate::ordinal::{Ordinal, OrdinalError};
use crate::rational::Rational;
use crate::sets::{ChainSpec, SetDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Nat(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Nat(s)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "(){}[],+*^/-@".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Recursive-descent cursor over the token stream.
pub struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            len: text.len(),
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn peek_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(id)) if id == s)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), |t| t.to_string())
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.found()))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.found())),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Nat(s)) => {
                let pos = self.pos();
                let v = s.parse::<u64>().map_err(|_| ParseError {
                    pos,
                    message: format!("number `{s}` does not fit in 64 bits"),
                })?;
                self.at += 1;
                Ok(v)
            }
            _ => self.error(format!("expected a natural number, found {}", self.found())),
        }
    }

    fn big_nat(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(Tok::Nat(s)) => Ok(s.parse().expect("digits")),
            _ => {
                self.at -= 1;
                self.error(format!("expected digits, found {}", self.found()))
            }
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.toks.len() {
            self.error(format!("unexpected trailing {}", self.found()))
        } else {
            Ok(())
        }
    }

    pub fn order(&mut self) -> Result<OrderExpr, ParseError> {
        let start = self.pos();
        let name = self.ident()?;
        match name.as_str() {
            "Q" => Ok(OrderExpr::Rationals),
            "ord" => {
                self.expect_sym('(')?;
                let bound = self.ordinal()?;
                self.expect_sym(')')?;
                Ok(OrderExpr::WellOrder(bound))
            }
            "rev" => {
                self.expect_sym('(')?;
                let inner_pos = self.pos();
                let inner = self.order()?;
                self.expect_sym(')')?;
                match inner {
                    OrderExpr::WellOrder(bound) => Ok(OrderExpr::Reversed(bound)),
                    other => Err(ParseError {
                        pos: inner_pos,
                        message: format!("rev applies only to ord(...), got {other}"),
                    }),
                }
            }
            "lex" => {
                self.expect_sym('(')?;
                let a = self.order()?;
                self.expect_sym(',')?;
                let b = self.order()?;
                self.expect_sym(')')?;
                Ok(OrderExpr::lex(a, b))
            }
            other => Err(ParseError {
                pos: start,
                message: format!("unknown order `{other}`"),
            }),
        }
    }

    pub fn ordinal(&mut self) -> Result<Ordinal, ParseError> {
        let start = self.pos();
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let mut zero_seen = false;
        loop {
            let term_pos = self.pos();
            let (exponent, coeff) = self.ordinal_term()?;
            if coeff == 0 {
                if zero_seen || !terms.is_empty() || self.peek_sym('+') {
                    return Err(ParseError {
                        pos: term_pos,
                        message: "0 may only appear alone".into(),
                    });
                }
                zero_seen = true;
            } else {
                terms.push((exponent, coeff));
            }
            if !self.eat_sym('+') {
                break;
            }
        }
        Ordinal::from_terms(terms).map_err(|e| ParseError {
            pos: start,
            message: match e {
                OrdinalError::NonDecreasing { .. } => format!("non-canonical CNF: {e}"),
                other => other.to_string(),
            },
        })
    }

    fn ordinal_term(&mut self) -> Result<(Ordinal, u64), ParseError> {
        if self.peek_ident("w") {
            self.at += 1;
            let exponent = if self.eat_sym('^') {
                self.ordinal_exponent()?
            } else {
                Ordinal::finite(1)
            };
            let coeff = if self.eat_sym('*') {
                let pos = self.pos();
                let c = self.nat()?;
                if c == 0 {
                    return Err(ParseError {
                        pos,
                        message: "CNF coefficient must be positive".into(),
                    });
                }
                c
            } else {
                1
            };
            Ok((exponent, coeff))
        } else {
            let n = self.nat()?;
            Ok((Ordinal::zero(), n))
        }
    }

    fn ordinal_exponent(&mut self) -> Result<Ordinal, ParseError> {
        if self.eat_sym('(') {
            let e = self.ordinal()?;
            self.expect_sym(')')?;
            Ok(e)
        } else if self.peek_ident("w") {
            self.at += 1;
            let inner = if self.eat_sym('^') {
                self.ordinal_exponent()?
            } else {
                Ordinal::finite(1)
            };
            Ok(Ordinal::omega_pow(inner))
        } else {
            Ok(Ordinal::finite(self.nat()?))
        }
    }

    pub fn rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat_sym('-');
        let mut numer = self.big_nat()?;
        if negative {
            numer = -numer;
        }
        if self.eat_sym('/') {
            let pos = self.pos();
            let denom = self.big_nat()?;
            Rational::new(numer, denom).ok_or(ParseError {
                pos,
                message: "zero denominator".into(),
            })
        } else {
            Ok(Rational::new(numer, 1).expect("den 1"))
        }
    }

    pub fn point(&mut self, order: &OrderExpr) -> Result<Point, ParseError> {
        let start = self.pos();
        let raw = match order {
            OrderExpr::Rationals => Point::Rational(self.rational()?),
            OrderExpr::WellOrder(_) => Point::Ordinal(self.ordinal()?),
            OrderExpr::Reversed(_) => Point::Reversed(self.ordinal()?),
            OrderExpr::Lex(first, second) => {
                self.expect_sym('(')?;
                let a = self.point(first)?;
                self.expect_sym(',')?;
                let b = self.point(second)?;
                self.expect_sym(')')?;
                Point::pair(a, b)
            }
        };
        raw.conform(order).map_err(|e| ParseError {
            pos: start,
            message: e.to_string(),
        })
    }

    fn point_list(&mut self, order: &OrderExpr, close: char) -> Result<Vec<Point>, ParseError> {
        let mut points = Vec::new();
        if self.peek_sym(close) {
            return Ok(points);
        }
        loop {
            points.push(self.point(order)?);
            if !self.eat_sym(',') {
                break;
            }
        }
        Ok(points)
    }

    pub fn chain(&mut self, order: &OrderExpr) -> Result<ChainSpec, ParseError> {
        if self.peek_ident("recip") {
            self.at += 1;
            Ok(ChainSpec::Reciprocals)
        } else {
            Ok(ChainSpec::Points(self.point_list(order, ')')?))
        }
    }

    pub fn set(&mut self, order: &OrderExpr) -> Result<SetDescriptor, ParseError> {
        let start = self.pos();
        let name = self.ident()?;
        let descriptor = match name.as_str() {
            "finite" => {
                self.expect_sym('{')?;
                let points = self.point_list(order, '}')?;
                self.expect_sym('}')?;
                SetDescriptor::Finite(points)
            }
            "enumerated" => {
                self.expect_sym('(')?;
                if !self.peek_ident("e") {
                    return self.error("only the fixed enumeration `e` is available");
                }
                self.at += 1;
                self.expect_sym(',')?;
                let count = self.nat()?;
                self.expect_sym(')')?;
                SetDescriptor::Enumerated(count)
            }
            "fullblocks" => SetDescriptor::FullBlocks,
            "singletonchain" => {
                self.expect_sym('(')?;
                let chain = self.chain(order)?;
                self.expect_sym(')')?;
                SetDescriptor::Chain(chain)
            }
            "wellorder" => {
                self.expect_sym('(')?;
                let start = self.rational()?;
                self.expect_sym(',')?;
                let pos = self.pos();
                let step = self.rational()?;
                if !step.is_positive() {
                    return Err(ParseError {
                        pos,
                        message: "wellorder step must be positive".into(),
                    });
                }
                self.expect_sym(')')?;
                SetDescriptor::WellOrder { start, step }
            }
            "union" => {
                self.expect_sym('(')?;
                let family = self.family(order)?;
                self.expect_sym(')')?;
                SetDescriptor::Union(family)
            }
            "inblock" => {
                let OrderExpr::Lex(_, second) = order else {
                    return Err(ParseError {
                        pos: start,
                        message: format!("inblock needs a lex order, got {order}"),
                    });
                };
                self.expect_sym('(')?;
                let block = self.ordinal()?;
                self.expect_sym(',')?;
                let inner = self.set(second)?;
                self.expect_sym(')')?;
                SetDescriptor::InBlock {
                    block,
                    inner: Box::new(inner),
                }
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown set `{other}`"),
                })
            }
        };
        descriptor.validate(order).map_err(|e| ParseError {
            pos: start,
            message: e.to_string(),
        })?;
        Ok(descriptor)
    }

    pub fn family(&mut self, order: &OrderExpr) -> Result<FamilyDescriptor, ParseError> {
        let start = self.pos();
        let name = self.ident()?;
        let descriptor = match name.as_str() {
            "fullblocks" => FamilyDescriptor::FullBlocks,
            "chain" => {
                self.expect_sym('(')?;
                let chain = self.chain(order)?;
                self.expect_sym(')')?;
                FamilyDescriptor::Chain(chain)
            }
            "telescoping" | "empty" => {
                self.expect_sym('(')?;
                let gamma = self.ordinal()?;
                self.expect_sym(')')?;
                if name == "telescoping" {
                    FamilyDescriptor::Telescoping(gamma)
                } else {
                    FamilyDescriptor::Empty(gamma)
                }
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown block family `{other}`"),
                })
            }
        };
        descriptor.build(order).map_err(|e| ParseError {
            pos: start,
            message: e.to_string(),
        })?;
        Ok(descriptor)
    }

    /// Used by the strategy descriptor parser.
    pub(crate) fn expect_open(&mut self) -> Result<(), ParseError> {
        self.expect_sym('(')
    }

    pub(crate) fn expect_close(&mut self) -> Result<(), ParseError> {
        self.expect_sym(')')
    }

    pub(crate) fn eat_comma(&mut self) -> bool {
        self.eat_sym(',')
    }

    pub(crate) fn take_ident(&mut self) -> Result<String, ParseError> {
        self.ident()
    }

    pub(crate) fn take_nat(&mut self) -> Result<u64, ParseError> {
        self.nat()
    }

    pub(crate) fn take_points(&mut self, order: &OrderExpr) -> Result<Vec<Point>, ParseError> {
        self.point_list(order, ')')
    }

    pub(crate) fn peek_close(&self) -> bool {
        self.peek_sym(')')
    }

    pub(crate) fn position(&self) -> usize {
        self.pos()
    }
}

fn whole<T>(
    text: &str,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(text)?;
    let value = f(&mut p)?;
    p.finish()?;
    Ok(value)
}

pub fn parse_order(text: &str) -> Result<OrderExpr, ParseError> {
    whole(text, Parser::order)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    whole(text, Parser::ordinal)
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    whole(text, Parser::rational)
}

pub fn parse_point(order: &OrderExpr, text: &str) -> Result<Point, ParseError> {
    whole(text, |p| p.point(order))
}

pub fn parse_set(order: &OrderExpr, text: &str) -> Result<SetDescriptor, ParseError> {
    whole(text, |p| p.set(order))
}

pub fn parse_family(order: &OrderExpr, text: &str) -> Result<FamilyDescriptor, ParseError> {
    whole(text, |p| p.family(order))
}

impl From<OrderError> for ParseError {
    fn from(e: OrderError) -> Self {
        ParseError {
            pos: 0,
            message: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_constructors() {
        assert_eq!(
            parse_order("lex(rev(ord(w^2)), Q)").unwrap(),
            OrderExpr::reversed_blocks(Ordinal::omega_pow(Ordinal::finite(2)))
        );
        let o = parse_order("ord(w*2+3)").unwrap();
        let expected =
            Ordinal::from_terms(vec![(Ordinal::finite(1), 2), (Ordinal::zero(), 3)]).unwrap();
        assert_eq!(o, OrderExpr::WellOrder(expected));
    }

    #[test]
    fn order_errors_have_positions() {
        let err = parse_order("lex(Q, R)").unwrap_err();
        assert_eq!(err.pos, 7);
        let err = parse_order("rev(Q)").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = parse_order("ord(w + w^2)").unwrap_err();
        assert!(err.message.contains("non-canonical"), "{err}");
        assert!(parse_order("Q Q").is_err());
        assert!(parse_order("ord(w*0)").is_err());
        assert!(parse_order("ord(0 + 1)").is_err());
        assert!(parse_order("Q $").is_err());
    }

    #[test]
    fn ordinal_forms() {
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        assert_eq!(parse_ordinal("w^w^2").unwrap().to_string(), "w^(w^2)");
        assert_eq!(parse_ordinal("w^(w+1)*3 + w^0*2").unwrap().to_string(), "w^(w + 1)*3 + 2");
        assert_eq!(parse_ordinal("w^1*1").unwrap().to_string(), "w");
    }

    #[test]
    fn points_follow_the_order() {
        let order = parse_order("lex(rev(ord(w)), Q)").unwrap();
        let p = parse_point(&order, "(5, -1/2)").unwrap();
        assert_eq!(
            p,
            Point::block_point(Ordinal::finite(5), "-1/2".parse().unwrap())
        );
        assert!(parse_point(&order, "(w, 0)").is_err());
        assert!(parse_point(&order, "1/2").is_err());
        assert!(parse_point(&OrderExpr::Rationals, "1/0").is_err());
        assert_eq!(parse_point(&OrderExpr::Rationals, "4/6").unwrap().to_string(), "2/3");
    }

    #[test]
    fn set_and_family_syntax() {
        let q = OrderExpr::Rationals;
        assert_eq!(parse_set(&q, "enumerated(e, 256)").unwrap(), SetDescriptor::Enumerated(256));
        assert_eq!(
            parse_set(&q, "finite{1/2, 3}").unwrap().to_string(),
            "finite{1/2, 3}"
        );
        assert!(parse_set(&q, "singletonchain(1, 2)").is_err());
        assert_eq!(
            parse_set(&q, "singletonchain(recip)").unwrap(),
            SetDescriptor::Chain(ChainSpec::Reciprocals)
        );
        let lex = parse_order("lex(rev(ord(w)), Q)").unwrap();
        assert_eq!(
            parse_set(&lex, "inblock(5, wellorder(0, 1))").unwrap().to_string(),
            "inblock(5, wellorder(0, 1))"
        );
        assert!(parse_set(&lex, "enumerated(e, 3)").is_err());
        assert!(parse_family(&q, "fullblocks").is_err());
        assert_eq!(parse_family(&lex, "fullblocks").unwrap(), FamilyDescriptor::FullBlocks);
        assert_eq!(
            parse_family(&q, "telescoping(w)").unwrap(),
            FamilyDescriptor::Telescoping(Ordinal::omega())
        );
        assert!(parse_family(&q, "telescoping(w+1)").is_err());
    }
}
