//! Ordinals below ε₀ in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `ω^e₁·c₁ + ω^e₂·c₂ + … + ω^eₖ·cₖ` with `e₁ > e₂ > … > eₖ` and every
/// `cᵢ > 0`. The empty sum is `0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("CNF exponents must strictly decrease: term {index} has exponent {exponent} after {previous}")]
    NonDecreasing {
        index: usize,
        exponent: Ordinal,
        previous: Ordinal,
    },
    #[error("CNF coefficient at term {index} must be positive")]
    ZeroCoefficient { index: usize },
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::finite(1))
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![(exponent, 1)],
        }
    }

    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (index, (exponent, coeff)) in terms.iter().enumerate() {
            if *coeff == 0 {
                return Err(OrdinalError::ZeroCoefficient { index });
            }
            if index > 0 {
                let previous = &terms[index - 1].0;
                if exponent >= previous {
                    return Err(OrdinalError::NonDecreasing {
                        index,
                        exponent: exponent.clone(),
                        previous: previous.clone(),
                    });
                }
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// `self + 1`.
    pub fn successor(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += 1,
            _ => terms.push((Ordinal::zero(), 1)),
        }
        Ordinal { terms }
    }

    /// Uniform-ish random ordinal strictly below `bound` (`None` when the
    /// bound is 0). Coefficients of freshly generated tail terms are at most
    /// `max_coeff`.
    pub fn sample_below<R: Rng + ?Sized>(
        bound: &Ordinal,
        rng: &mut R,
        max_coeff: u64,
    ) -> Option<Ordinal> {
        if bound.is_zero() {
            return None;
        }
        let max_coeff = max_coeff.max(1);
        // Keep a prefix of the bound, lower the coefficient of the next
        // term, then append an arbitrary tail below ω^(that exponent).
        let split = rng.random_range(0..bound.terms.len());
        let (exponent, coeff) = &bound.terms[split];
        let mut terms: Vec<(Ordinal, u64)> = bound.terms[..split].to_vec();
        let lowered = rng.random_range(0..*coeff);
        if lowered > 0 {
            terms.push((exponent.clone(), lowered));
        }
        let mut ceiling = exponent.clone();
        while !ceiling.is_zero() && rng.random_bool(0.6) {
            let Some(next) = Ordinal::sample_below(&ceiling, rng, max_coeff) else {
                break;
            };
            terms.push((next.clone(), rng.random_range(1..=max_coeff)));
            ceiling = next;
        }
        Some(Ordinal { terms })
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                unequal => return unequal,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordinal comparison on canonical CNF: lexicographic over
/// `(exponent, coefficient)` term sequences.
pub fn ordinal_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exponent, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if exponent.is_zero() {
                write!(f, "{coeff}")?;
                continue;
            }
            match exponent.as_finite() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None if *exponent == Ordinal::omega() => write!(f, "w^w")?,
                None => write!(f, "w^({exponent})")?,
            }
            if *coeff != 1 {
                write!(f, "*{coeff}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

// JSON: {"cnf": [[exponent, coefficient], ...]} with exponents encoded the
// same way.
#[derive(Serialize, Deserialize)]
struct CnfRepr {
    cnf: Vec<(Ordinal, u64)>,
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CnfRepr {
            cnf: self.terms.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CnfRepr::deserialize(deserializer)?;
        Ordinal::from_terms(repr.cnf).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn trivial_comparisons() {
        assert_eq!(ordinal_cmp(&Ordinal::zero(), &Ordinal::zero()), Ordering::Equal);
        assert_eq!(ordinal_cmp(&w(), &Ordinal::finite(5)), Ordering::Greater);
        assert!(Ordinal::omega_pow(w()) > Ordinal::omega_pow(Ordinal::finite(7)));
    }

    #[test]
    fn malformed_cnf_rejected() {
        let err = Ordinal::from_terms(vec![(Ordinal::zero(), 3), (Ordinal::finite(1), 2)]);
        assert!(matches!(err, Err(OrdinalError::NonDecreasing { index: 1, .. })));
        let err = Ordinal::from_terms(vec![(Ordinal::finite(1), 1), (Ordinal::finite(1), 2)]);
        assert!(matches!(err, Err(OrdinalError::NonDecreasing { .. })));
        let err = Ordinal::from_terms(vec![(Ordinal::finite(1), 0)]);
        assert!(matches!(err, Err(OrdinalError::ZeroCoefficient { index: 0 })));
    }

    #[test]
    fn display_forms() {
        let o = Ordinal::from_terms(vec![(Ordinal::finite(1), 2), (Ordinal::zero(), 3)]).unwrap();
        assert_eq!(o.to_string(), "w*2 + 3");
        let big = Ordinal::from_terms(vec![(w().successor(), 1), (w(), 4)]).unwrap();
        assert_eq!(big.to_string(), "w^(w + 1) + w^w*4");
    }

    #[test]
    fn successor_and_finite() {
        assert_eq!(Ordinal::zero().successor(), Ordinal::finite(1));
        assert_eq!(Ordinal::finite(4).successor().as_finite(), Some(5));
        assert_eq!(w().successor().to_string(), "w + 1");
        assert_eq!(w().as_finite(), None);
    }

    #[test]
    fn samples_stay_below_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bounds = [
            Ordinal::finite(1),
            Ordinal::finite(9),
            w(),
            Ordinal::omega_pow(Ordinal::finite(2)),
            Ordinal::omega_pow(w()),
        ];
        for bound in &bounds {
            for _ in 0..500 {
                let x = Ordinal::sample_below(bound, &mut rng, 4).unwrap();
                assert!(x < *bound, "{x} !< {bound}");
                assert!(Ordinal::from_terms(x.terms().to_vec()).is_ok());
            }
        }
        assert!(Ordinal::sample_below(&Ordinal::zero(), &mut rng, 4).is_none());
    }

    #[test]
    fn json_shape() {
        let o = Ordinal::from_terms(vec![(Ordinal::finite(1), 2), (Ordinal::zero(), 3)]).unwrap();
        let json = serde_json::to_string(&o).unwrap();
        assert_eq!(json, r#"{"cnf":[[{"cnf":[[{"cnf":[]},1]]},2],[{"cnf":[]},3]]}"#);
        let back: Ordinal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, o);
        assert!(serde_json::from_str::<Ordinal>(r#"{"cnf":[[{"cnf":[]},1],[{"cnf":[]},1]]}"#).is_err());
    }
}
