//! Exact rationals in canonical reduced form, plus the frozen enumeration of ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number. The denominator is always positive and
/// coprime to the numerator, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Denominator as `u64`, saturating for huge values.
    pub fn denom_u64(&self) -> u64 {
        self.0.denom().to_u64().unwrap_or(u64::MAX)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `(a + c) / (b + d)` for reduced `a/b` and `c/d`; strictly between the two
    /// whenever they differ.
    pub fn mediant(&self, other: &Rational) -> Rational {
        Rational(BigRational::new(
            self.numer() + other.numer(),
            self.denom() + other.denom(),
        ))
    }

    pub fn succ(&self) -> Rational {
        Rational(&self.0 + BigRational::one())
    }

    pub fn pred(&self) -> Rational {
        Rational(&self.0 - BigRational::one())
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        Rational(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational(&self.0 * &other.0)
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Rational) -> Rational {
        Rational(&self.0 / &other.0)
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if !d.is_positive() {
            return Err(err());
        }
        Rational::new(n, d).ok_or_else(err)
    }
}

// JSON: {"num": "<int>", "den": "<positive int>"}, both as decimal strings.
#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        format!("{}/{}", repr.num, repr.den)
            .parse()
            .map_err(D::Error::custom)
    }
}

/// The frozen enumeration `e: ℕ → ℚ`.
///
/// `e(0) = 0`; afterwards rationals are swept by height `s = |p| + q` for
/// `s = 2, 3, …`, within a height by increasing denominator `q = 1..s-1`,
/// keeping only coprime pairs, and emitting `p/q` before `-p/q`:
///
/// `0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 4, -4, 3/2, -3/2, …`
///
/// Certificates and block strategies refer to indices of this sequence, so
/// the order must stay fixed.
pub struct RationalEnumeration {
    height: u64,
    denom: u64,
    negative_pending: bool,
    started: bool,
}

impl RationalEnumeration {
    pub fn new() -> Self {
        RationalEnumeration {
            height: 1,
            denom: 0,
            negative_pending: false,
            started: false,
        }
    }

    /// `e(n)`.
    pub fn nth(n: u64) -> Rational {
        let mut remaining = n;
        if remaining == 0 {
            return Rational::zero();
        }
        remaining -= 1;
        // Skip whole heights: height s contributes 2·φ(s) entries.
        let mut height = 2u64;
        loop {
            let block = 2 * totient(height);
            if remaining < block {
                break;
            }
            remaining -= block;
            height += 1;
        }
        let mut slot = remaining / 2;
        for denom in 1..height {
            if denom.gcd(&(height - denom)) == 1 {
                if slot == 0 {
                    let numer = (height - denom) as i64;
                    let numer = if remaining % 2 == 0 { numer } else { -numer };
                    return Rational::new(numer, denom as i64).expect("positive denominator");
                }
                slot -= 1;
            }
        }
        unreachable!("height {height} has fewer coprime pairs than counted")
    }

    /// Inverse of [`RationalEnumeration::nth`]. Returns `None` only when the
    /// height of `q` does not fit in 64 bits.
    pub fn index_of(q: &Rational) -> Option<u64> {
        if q.numer().is_zero() {
            return Some(0);
        }
        let numer = q.numer().abs().to_u64()?;
        let denom = q.denom().to_u64()?;
        let height = numer.checked_add(denom)?;
        let mut index = 1u64;
        for s in 2..height {
            index = index.checked_add(2 * totient(s))?;
        }
        let before = (1..denom).filter(|d| d.gcd(&(height - d)) == 1).count() as u64;
        index += 2 * before;
        if q.is_negative() {
            index += 1;
        }
        Some(index)
    }
}

impl Default for RationalEnumeration {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for RationalEnumeration {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if !self.started {
            self.started = true;
            return Some(Rational::zero());
        }
        loop {
            if self.negative_pending {
                self.negative_pending = false;
                let numer = (self.height - self.denom) as i64;
                return Some(Rational::new(-numer, self.denom as i64).expect("positive"));
            }
            self.denom += 1;
            if self.denom >= self.height {
                self.height += 1;
                self.denom = 1;
            }
            let numer = self.height - self.denom;
            if numer.gcd(&self.denom) == 1 {
                self.negative_pending = true;
                return Some(Rational::new(numer as i64, self.denom as i64).expect("positive"));
            }
        }
    }
}

/// Number of `d` in `1..s` with `gcd(d, s) = 1`, for `s >= 2`.
fn totient(s: u64) -> u64 {
    (1..s).filter(|d| d.gcd(&s) == 1).count() as u64
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::integer(*other)))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::integer(*other)
    }
}
