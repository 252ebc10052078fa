use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::zinfty::PathVector;

/// `ψ(x) = Σ ψ_k x_k` with finitely many nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    /// Sorted by position, no zero coefficients.
    terms: Vec<(usize, BigInt)>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    /// The coordinate form `x_k`.
    pub fn coordinate(k: usize) -> Self {
        LinearForm {
            terms: vec![(k, BigInt::one())],
        }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut f = LinearForm::zero();
        for (k, c) in terms {
            f = f.add_scaled(&LinearForm { terms: vec![(k, c.into())] }, &BigInt::one());
        }
        f
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        match self.terms.binary_search_by_key(&k, |(p, _)| *p) {
            Ok(n) => self.terms[n].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub(crate) fn coeff_ref(&self, k: usize) -> Option<&BigInt> {
        self.terms
            .binary_search_by_key(&k, |(p, _)| *p)
            .ok()
            .map(|n| &self.terms[n].1)
    }

    pub fn terms(&self) -> &[(usize, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_position(&self) -> Option<usize> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn has_negative(&self) -> bool {
        self.terms.iter().any(|(_, c)| c.is_negative())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &LinearForm, s: &BigInt) -> LinearForm {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().map(|(k, c)| (*k, c.clone())),
                (None, Some(_)) => b.next().map(|(k, c)| (*k, c * s)),
                (Some((ka, _)), Some((kb, _))) => {
                    if ka < kb {
                        a.next().map(|(k, c)| (*k, c.clone()))
                    } else if kb < ka {
                        b.next().map(|(k, c)| (*k, c * s))
                    } else {
                        let (k, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        Some((*k, ca + cb * s))
                    }
                }
            };
            if let Some((k, c)) = next {
                if !c.is_zero() {
                    out.push((k, c));
                }
            }
        }
        LinearForm { terms: out }
    }

    pub fn eval(&self, x: &PathVector) -> BigInt {
        self.terms
            .iter()
            .map(|(k, c)| c * BigInt::from(x.get(*k)))
            .sum()
    }

    /// Coefficients on positions `1..=width` as `i64`, if they all fit and
    /// the support lies inside the range.
    pub(crate) fn dense_i64(&self, width: usize) -> Option<Vec<i64>> {
        let mut out = vec![0i64; width];
        for (k, c) in &self.terms {
            *out.get_mut(k.checked_sub(1)?)? = c.to_i64()?;
        }
        Some(out)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "x_{k}")?;
            } else {
                write!(f, "{mag}·x_{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            map.serialize_entry(&k.to_string(), &crate::json::BigJson(c))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_arithmetic() {
        let f = LinearForm::from_terms([(3, 2), (1, 1), (3, -2)]);
        assert_eq!(f, LinearForm::coordinate(1));
        let g = LinearForm::from_terms([(3, 3), (4, -1)]);
        assert_eq!(g.to_string(), "3·x_3 - x_4");
        let h = g.add_scaled(&LinearForm::coordinate(4), &BigInt::one());
        assert_eq!(h, LinearForm::from_terms([(3, 3)]));
        assert_eq!(LinearForm::zero().to_string(), "0");
        assert_eq!(LinearForm::from_terms([(2, -1)]).to_string(), "-x_2");
    }

    #[test]
    fn evaluation() {
        let g = LinearForm::from_terms([(3, 3), (4, -1)]);
        let x = PathVector::from_pairs(&[(3, 1), (4, 5)]);
        assert_eq!(g.eval(&x), BigInt::from(-2));
        assert_eq!(g.dense_i64(4), Some(vec![0, 0, 3, -1]));
        assert_eq!(g.dense_i64(3), None);
    }
}
