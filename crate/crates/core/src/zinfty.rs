//! The sequence crystal on finitely supported nonnegative integer sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::datum::{pairing, BorcherdsCartanDatum, IndexId, Weight};
use crate::error::{Error, Result};
use crate::iota::IotaSequence;

/// `x = (…, x_2, x_1)` with finite support; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathVector(BTreeMap<usize, u64>);

impl PathVector {
    pub fn zero() -> Self {
        PathVector(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let mut x = PathVector::zero();
        for &(k, v) in pairs {
            x.set(k, v);
        }
        x
    }

    /// Little-endian entries: `xs[0]` is `x_1`.
    pub fn from_le(xs: &[u64]) -> Self {
        let mut x = PathVector::zero();
        for (k, &v) in xs.iter().enumerate() {
            x.set(k + 1, v);
        }
        x
    }

    pub fn to_le(&self) -> Vec<u64> {
        let n = self.max_position().unwrap_or(0);
        (1..=n).map(|k| self.get(k)).collect()
    }

    pub fn get(&self, k: usize) -> u64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: usize, v: u64) {
        assert!(k >= 1, "positions start at 1");
        if v == 0 {
            self.0.remove(&k);
        } else {
            self.0.insert(k, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// `Σ x_k`.
    pub fn degree(&self) -> u64 {
        self.0.values().sum()
    }

    /// Nonzero entries in increasing position.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    /// Nonzero entries with `from <= k <= to`.
    pub fn range(&self, from: usize, to: usize) -> impl DoubleEndedIterator<Item = (usize, u64)> + '_ {
        let it = if from <= to {
            Some(self.0.range(from..=to).map(|(k, v)| (*k, *v)))
        } else {
            None
        };
        it.into_iter().flatten()
    }

    fn incremented(&self, k: usize) -> Self {
        let mut y = self.clone();
        *y.0.entry(k).or_insert(0) += 1;
        y
    }

    fn decremented(&self, k: usize) -> Self {
        let mut y = self.clone();
        let v = self.get(k);
        assert!(v > 0, "decrement below zero at position {k}");
        y.set(k, v - 1);
        y
    }
}

impl fmt::Display for PathVector {
    /// `[x_N,…,x_1]`, most significant position first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let le = self.to_le();
        write!(f, "[")?;
        for (n, v) in le.iter().rev().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PathVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::input(format!("expected \"[x_N,…,x_1]\", got {s:?}")))?;
        if body.trim().is_empty() {
            return Ok(PathVector::zero());
        }
        let mut le = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::input(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        le.reverse();
        Ok(PathVector::from_le(&le))
    }
}

impl Serialize for PathVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_le().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PathVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(PathVector::from_le(&Vec::<u64>::deserialize(de)?))
    }
}

/// `Z^∞_{≥0,ι}` for a fixed datum and sequence.
#[derive(Clone, Debug)]
pub struct SequenceCrystal {
    datum: Arc<BorcherdsCartanDatum>,
    iota: Arc<IotaSequence>,
}

impl SequenceCrystal {
    pub fn new(datum: Arc<BorcherdsCartanDatum>, iota: Arc<IotaSequence>) -> Self {
        SequenceCrystal { datum, iota }
    }

    pub fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    pub fn iota(&self) -> &IotaSequence {
        &self.iota
    }

    pub fn datum_arc(&self) -> Arc<BorcherdsCartanDatum> {
        Arc::clone(&self.datum)
    }

    pub fn iota_arc(&self) -> Arc<IotaSequence> {
        Arc::clone(&self.iota)
    }

    /// Errors unless `i` occurs in the sequence.
    pub fn check_index(&self, i: IndexId) -> Result<()> {
        match self.iota.first_occurrence(i) {
            Some(_) => Ok(()),
            None => Err(Error::UnknownIndex(i)),
        }
    }

    /// `⟨h_{i_k}, α_{i_j}⟩`.
    pub fn a_pos(&self, k: usize, j: usize) -> BigInt {
        self.datum.a(self.iota.index_at(k), self.iota.index_at(j))
    }

    pub fn is_real_pos(&self, k: usize) -> bool {
        self.datum.is_real(self.iota.index_at(k))
    }

    /// `Σ_{from <= j <= to} ⟨h_i, α_{i_j}⟩ x_j`.
    pub fn weighted_sum(&self, x: &PathVector, i: IndexId, from: usize, to: usize) -> BigInt {
        x.range(from, to)
            .map(|(j, v)| self.datum.a(i, self.iota.index_at(j)) * BigInt::from(v))
            .sum()
    }

    pub fn sigma_k(&self, x: &PathVector, k: usize) -> BigInt {
        let i = self.iota.index_at(k);
        let tail = self.weighted_sum(x, i, k + 1, usize::MAX);
        if self.datum.is_real(i) {
            tail + BigInt::from(x.get(k))
        } else {
            tail
        }
    }

    /// `(σ_k, k)` over the positions of `i` up to the first one past the support.
    fn scan(&self, x: &PathVector, i: IndexId) -> Vec<(BigInt, usize)> {
        let top = x.max_position().unwrap_or(0);
        let mut out = Vec::new();
        for k in self.iota.positions_of(i) {
            out.push((self.sigma_k(x, k), k));
            if k > top {
                break;
            }
        }
        out
    }

    fn extremes(&self, x: &PathVector, i: IndexId) -> (BigInt, usize, usize) {
        let scan = self.scan(x, i);
        let max = scan.iter().map(|(s, _)| s).max().expect("index occurs").clone();
        let nf = scan.iter().find(|(s, _)| *s == max).unwrap().1;
        let ne = scan.iter().rev().find(|(s, _)| *s == max).unwrap().1;
        (max, nf, ne)
    }

    /// `σ^{(i)}(x)`.
    ///
    /// # Panics
    /// If `i` does not occur in the sequence.
    pub fn sigma_max(&self, x: &PathVector, i: IndexId) -> BigInt {
        self.extremes(x, i).0
    }

    /// Minimal position attaining `σ^{(i)}`.
    pub fn nf(&self, x: &PathVector, i: IndexId) -> usize {
        self.extremes(x, i).1
    }

    /// Maximal attaining position for real `i`; equal to `nf` for imaginary `i`.
    pub fn ne(&self, x: &PathVector, i: IndexId) -> usize {
        let (_, nf, ne) = self.extremes(x, i);
        if self.datum.is_real(i) {
            ne
        } else {
            nf
        }
    }

    pub fn f_tilde(&self, x: &PathVector, i: IndexId) -> PathVector {
        x.incremented(self.nf(x, i))
    }

    /// `None` is the crystal's null element, distinct from the zero vector.
    pub fn e_tilde(&self, x: &PathVector, i: IndexId) -> Option<PathVector> {
        let (max, nf, ne) = self.extremes(x, i);
        if self.datum.is_real(i) {
            if !max.is_positive() || x.get(ne) == 0 {
                return None;
            }
            return Some(x.decremented(ne));
        }
        let k = nf;
        let xk = x.get(k);
        let km = self.iota.kminus(k);
        let allowed = if km == 0 {
            xk >= 1
        } else {
            xk > 1 || (xk == 1 && self.weighted_sum(x, i, km + 1, k - 1).is_negative())
        };
        allowed.then(|| x.decremented(k))
    }

    /// `wt(x) = -Σ x_j α_{i_j}`.
    pub fn wt(&self, x: &PathVector) -> Weight {
        let mut w = Weight::zero();
        for (k, v) in x.iter() {
            w.add_root(self.iota.index_at(k), -BigInt::from(v));
        }
        w
    }

    pub fn eps(&self, x: &PathVector, i: IndexId) -> BigInt {
        if self.datum.is_real(i) {
            self.sigma_max(x, i)
        } else {
            BigInt::zero()
        }
    }

    pub fn phi(&self, x: &PathVector, i: IndexId) -> BigInt {
        pairing(&self.datum, i, &self.wt(x)).expect("weight of a path vector") + self.eps(x, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2(a: i64, b: i64, c: i64) -> SequenceCrystal {
        let d = BorcherdsCartanDatum::from_rows(&[&[-a, -b], &[-c, 2]]).unwrap();
        let s = IotaSequence::cyclic(&d, &[1, 2]).unwrap();
        SequenceCrystal::new(Arc::new(d), Arc::new(s))
    }

    const I1: IndexId = IndexId::Num(1);
    const I2: IndexId = IndexId::Num(2);

    #[test]
    fn sigma_examples() {
        let z = rank2(2, 1, 1);
        let zero = PathVector::zero();
        for k in 1..8 {
            assert_eq!(z.sigma_k(&zero, k), BigInt::zero());
        }
        let x1 = PathVector::from_pairs(&[(1, 1)]);
        assert_eq!(z.sigma_k(&x1, 2), BigInt::zero());
        assert_eq!(z.nf(&x1, I2), 2);
        let x3 = PathVector::from_pairs(&[(3, 1)]);
        let z = rank2(2, 1, 3);
        assert_eq!(z.sigma_k(&x3, 2), BigInt::from(-3));
    }

    #[test]
    fn operator_examples() {
        let z = rank2(2, 1, 1);
        let zero = PathVector::zero();
        let x1 = z.f_tilde(&zero, I1);
        assert_eq!(x1, PathVector::from_pairs(&[(1, 1)]));
        assert_eq!(z.f_tilde(&x1, I2), PathVector::from_pairs(&[(1, 1), (2, 1)]));
        for i in [I1, I2] {
            assert_eq!(z.e_tilde(&z.f_tilde(&zero, i), i), Some(zero.clone()));
            assert_eq!(z.e_tilde(&zero, i), None);
            assert_eq!(z.sigma_max(&zero, i), BigInt::zero());
            assert_eq!(z.nf(&zero, i), z.iota().first_occurrence(i).unwrap());
        }
        for x1v in 0..3 {
            let x = PathVector::from_pairs(&[(3, 1), (1, x1v)]);
            assert_eq!(z.e_tilde(&x, I1), None);
        }
    }

    #[test]
    fn statistics() {
        let z = rank2(2, 1, 1);
        let zero = PathVector::zero();
        assert!(z.wt(&zero).is_zero());
        assert_eq!(z.phi(&zero, I1), BigInt::zero());
        let x = PathVector::from_pairs(&[(1, 1), (2, 1)]);
        let mut w = Weight::root(I1, -1);
        w.add_root(I2, -1);
        assert_eq!(z.wt(&x), w);
        assert_eq!(z.eps(&x, I1), BigInt::zero());
    }

    #[test]
    fn real_ne_on_empty_slot_is_null() {
        // σ_2 = 2 > σ_4 = 1 but x_2 = 0
        let z = rank2(2, 1, 1);
        let x = PathVector::from_pairs(&[(4, 1)]);
        assert_eq!(z.e_tilde(&x, I2).map(|y| y.to_string()), None);
    }

    #[test]
    fn text_and_json_forms() {
        let x = PathVector::from_pairs(&[(1, 7), (3, 2)]);
        assert_eq!(x.to_string(), "[2,0,7]");
        assert_eq!("[2,0,7]".parse::<PathVector>().unwrap(), x);
        assert_eq!("[0,0,2,0,7]".parse::<PathVector>().unwrap(), x);
        assert_eq!(PathVector::zero().to_string(), "[]");
        assert_eq!("[]".parse::<PathVector>().unwrap(), PathVector::zero());
        assert_eq!(serde_json::to_string(&x).unwrap(), "[7,0,2]");
        assert!("[1,-2]".parse::<PathVector>().is_err());
    }
}
