//! Borcherds–Cartan data and root-lattice weights.
//!
//! A datum is either an explicit finite matrix or a generated family (the
//! Monster presentation with charge multiplicities), queried entry by entry.
//! Entries, weights and pairings use arbitrary-precision integers throughout.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monster::MonsterConfig;

/// Identifier of a simple root.
///
/// `Num` is used for explicit data; `Copy` is the `(level, copy)` pair of the
/// Monster presentation, where the real index is `(-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexId {
    Num(i64),
    Copy { level: i64, copy: u64 },
}

impl IndexId {
    pub const fn copy(level: i64, copy: u64) -> Self {
        IndexId::Copy { level, copy }
    }

    /// The level of a Monster copy index; plain indices are their own level.
    pub fn level(&self) -> i64 {
        match *self {
            IndexId::Num(n) => n,
            IndexId::Copy { level, .. } => level,
        }
    }
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexId::Num(n) => write!(f, "{n}"),
            IndexId::Copy { level, copy } => write!(f, "{level}_{copy}"),
        }
    }
}

impl FromStr for IndexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::input(format!("cannot parse index id {s:?}"));
        match s.rsplit_once('_') {
            Some((level, copy)) => Ok(IndexId::Copy {
                level: level.parse().map_err(|_| bad())?,
                copy: copy.parse().map_err(|_| bad())?,
            }),
            None => s.parse().map(IndexId::Num).map_err(|_| bad()),
        }
    }
}

impl Serialize for IndexId {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IndexId::Num(n) => ser.serialize_i64(*n),
            other => ser.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IndexId {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(n) => Ok(IndexId::Num(n)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexClass {
    Real,
    Imaginary,
}

/// Sparse integer combination `Σ c_j α_j` of simple roots.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(BTreeMap<IndexId, BigInt>);

impl Weight {
    pub fn zero() -> Self {
        Weight(BTreeMap::new())
    }

    /// `c · α_i`.
    pub fn root(i: IndexId, c: impl Into<BigInt>) -> Self {
        let mut w = Weight::zero();
        w.add_root(i, c);
        w
    }

    pub fn add_root(&mut self, i: IndexId, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn coeff(&self, i: IndexId) -> BigInt {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexId, &BigInt)> {
        self.0.iter()
    }

    /// Height `Σ |c_j|`.
    pub fn height(&self) -> BigInt {
        self.0.values().map(|c| c.abs()).sum()
    }

    pub fn map_ids(&self, f: impl Fn(IndexId) -> IndexId) -> Weight {
        let mut out = Weight::zero();
        for (i, c) in &self.0 {
            out.add_root(f(*i), c.clone());
        }
        out
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        for (i, c) in &rhs.0 {
            out.add_root(*i, c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|(i, c)| (*i, -c)).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.0.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "α_{i}")?;
            } else {
                write!(f, "{mag}α_{i}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (i, c) in &self.0 {
            map.serialize_entry(&i.to_string(), &crate::json::BigJson(c))?;
        }
        map.end()
    }
}

#[derive(Clone, Debug)]
enum Family {
    Explicit {
        ids: Vec<IndexId>,
        classes: Vec<IndexClass>,
        slot: HashMap<IndexId, usize>,
        matrix: Vec<Vec<BigInt>>,
    },
    Monster(MonsterConfig),
}

/// Borcherds–Cartan datum: index set, real/imaginary classification and the
/// integer matrix `a_ij = ⟨h_i, α_j⟩`.
#[derive(Clone, Debug)]
pub struct BorcherdsCartanDatum {
    family: Family,
    symmetrizer: Option<BTreeMap<IndexId, BigInt>>,
}

/// One violated axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RealDiagonal { i: IndexId, value: BigInt },
    ImaginaryDiagonalPositive { i: IndexId, value: BigInt },
    ImaginaryDiagonalOdd { i: IndexId, value: BigInt },
    OffDiagonalPositive { i: IndexId, j: IndexId, value: BigInt },
    ZeroPattern { i: IndexId, j: IndexId },
    SymmetrizerNonPositive { i: IndexId },
    SymmetrizerMismatch { i: IndexId, j: IndexId },
    SymmetrizerMissing { i: IndexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RealDiagonal { i, value } => {
                write!(f, "real index {i} has a_ii = {value}, expected 2")
            }
            Violation::ImaginaryDiagonalPositive { i, value } => {
                write!(f, "imaginary index {i} has a_ii = {value} > 0")
            }
            Violation::ImaginaryDiagonalOdd { i, value } => {
                write!(f, "imaginary index {i} has odd a_ii = {value}")
            }
            Violation::OffDiagonalPositive { i, j, value } => {
                write!(f, "a_({i},{j}) = {value} > 0 off the diagonal")
            }
            Violation::ZeroPattern { i, j } => {
                write!(f, "a_({i},{j}) = 0 but a_({j},{i}) != 0")
            }
            Violation::SymmetrizerNonPositive { i } => {
                write!(f, "symmetrizer s_{i} is not positive")
            }
            Violation::SymmetrizerMismatch { i, j } => {
                write!(f, "s_{i}·a_({i},{j}) != s_{j}·a_({j},{i})")
            }
            Violation::SymmetrizerMissing { i } => write!(f, "no symmetrizer for {i}"),
        }
    }
}

/// Which part of a generated family `validate` looks at.
#[derive(Clone, Copy, Debug)]
pub struct ValidationSample {
    pub max_level: i64,
    /// Copies per level; `None` means all of them.
    pub max_copies: Option<u64>,
}

impl Default for ValidationSample {
    fn default() -> Self {
        ValidationSample {
            max_level: 5,
            max_copies: Some(4),
        }
    }
}

impl BorcherdsCartanDatum {
    /// Explicit datum. Only shape is checked here; the axioms are checked by
    /// [`validate_datum`].
    pub fn explicit(indices: Vec<(IndexId, IndexClass)>, matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = indices.len();
        if n == 0 {
            return Err(Error::input("datum has no indices"));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::input(format!("matrix must be {n}x{n}")));
        }
        let mut slot = HashMap::with_capacity(n);
        for (k, (id, _)) in indices.iter().enumerate() {
            if slot.insert(*id, k).is_some() {
                return Err(Error::input(format!("duplicate index {id}")));
            }
        }
        let (ids, classes) = indices.into_iter().unzip();
        Ok(BorcherdsCartanDatum {
            family: Family::Explicit {
                ids,
                classes,
                slot,
                matrix,
            },
            symmetrizer: None,
        })
    }

    /// Explicit datum with indices `1..=n`, classified by the diagonal.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let indices = rows
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let class = if row.get(k) == Some(&2) {
                    IndexClass::Real
                } else {
                    IndexClass::Imaginary
                };
                (IndexId::Num(k as i64 + 1), class)
            })
            .collect();
        let matrix = rows
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::explicit(indices, matrix)
    }

    pub fn monster(config: MonsterConfig) -> Self {
        BorcherdsCartanDatum {
            family: Family::Monster(config),
            symmetrizer: None,
        }
    }

    pub fn with_symmetrizer(mut self, s: BTreeMap<IndexId, BigInt>) -> Self {
        self.symmetrizer = Some(s);
        self
    }

    pub fn symmetrizer(&self) -> Option<&BTreeMap<IndexId, BigInt>> {
        self.symmetrizer.as_ref()
    }

    pub fn monster_config(&self) -> Option<&MonsterConfig> {
        match &self.family {
            Family::Monster(cfg) => Some(cfg),
            Family::Explicit { .. } => None,
        }
    }

    pub fn contains(&self, i: IndexId) -> bool {
        match &self.family {
            Family::Explicit { slot, .. } => slot.contains_key(&i),
            Family::Monster(cfg) => cfg.contains(i),
        }
    }

    /// `a_ij`.
    pub fn entry(&self, i: IndexId, j: IndexId) -> Result<BigInt> {
        match &self.family {
            Family::Explicit { slot, matrix, .. } => {
                let r = *slot.get(&i).ok_or(Error::UnknownIndex(i))?;
                let c = *slot.get(&j).ok_or(Error::UnknownIndex(j))?;
                Ok(matrix[r][c].clone())
            }
            Family::Monster(cfg) => {
                for id in [i, j] {
                    if !cfg.contains(id) {
                        return Err(Error::UnknownIndex(id));
                    }
                }
                Ok(BigInt::from(-(i.level() + j.level())))
            }
        }
    }

    /// `a_ij` for indices already known to belong to the datum.
    pub(crate) fn a(&self, i: IndexId, j: IndexId) -> BigInt {
        self.entry(i, j)
            .unwrap_or_else(|e| panic!("index outside datum: {e}"))
    }

    pub fn class(&self, i: IndexId) -> Result<IndexClass> {
        match &self.family {
            Family::Explicit { slot, classes, .. } => {
                slot.get(&i).map(|&k| classes[k]).ok_or(Error::UnknownIndex(i))
            }
            Family::Monster(cfg) => {
                if !cfg.contains(i) {
                    Err(Error::UnknownIndex(i))
                } else if i.level() == -1 {
                    Ok(IndexClass::Real)
                } else {
                    Ok(IndexClass::Imaginary)
                }
            }
        }
    }

    pub(crate) fn is_real(&self, i: IndexId) -> bool {
        matches!(self.class(i), Ok(IndexClass::Real))
    }

    /// The full index list when it is explicit.
    pub fn explicit_indices(&self) -> Option<&[IndexId]> {
        match &self.family {
            Family::Explicit { ids, .. } => Some(ids),
            Family::Monster(_) => None,
        }
    }

    /// Number of real indices (the Monster presentation has exactly one).
    pub fn real_count(&self) -> usize {
        match &self.family {
            Family::Explicit { classes, .. } => {
                classes.iter().filter(|c| **c == IndexClass::Real).count()
            }
            Family::Monster(_) => 1,
        }
    }

    /// Indices inspected by validation: everything for explicit data, a
    /// level/copy-bounded prefix for generated families.
    pub fn sample_indices(&self, sample: ValidationSample) -> Vec<IndexId> {
        match &self.family {
            Family::Explicit { ids, .. } => ids.clone(),
            Family::Monster(cfg) => {
                let mut out = vec![IndexId::copy(-1, 1)];
                for level in 1..=sample.max_level.min(cfg.max_level()) {
                    let c = cfg.charge(level);
                    let upto = sample.max_copies.map_or(c, |m| m.min(c));
                    out.extend((1..=upto).map(|t| IndexId::copy(level, t)));
                }
                out
            }
        }
    }
}

/// Every violated axiom among the sampled indices; empty means valid.
pub fn validate_datum(d: &BorcherdsCartanDatum, sample: ValidationSample) -> Vec<Violation> {
    let ids = d.sample_indices(sample);
    let mut out = Vec::new();
    for &i in &ids {
        let aii = d.a(i, i);
        match d.class(i).expect("sampled index") {
            IndexClass::Real => {
                if aii != BigInt::from(2) {
                    out.push(Violation::RealDiagonal { i, value: aii });
                }
            }
            IndexClass::Imaginary => {
                if aii.is_positive() {
                    out.push(Violation::ImaginaryDiagonalPositive { i, value: aii.clone() });
                }
                if aii.is_odd() {
                    out.push(Violation::ImaginaryDiagonalOdd { i, value: aii });
                }
            }
        }
    }
    for &i in &ids {
        for &j in &ids {
            if i == j {
                continue;
            }
            let aij = d.a(i, j);
            if aij.is_positive() {
                out.push(Violation::OffDiagonalPositive { i, j, value: aij.clone() });
            }
            if aij.is_zero() && !d.a(j, i).is_zero() {
                out.push(Violation::ZeroPattern { i, j });
            }
        }
    }
    if let Some(s) = d.symmetrizer() {
        for &i in &ids {
            match s.get(&i) {
                None => out.push(Violation::SymmetrizerMissing { i }),
                Some(v) if !v.is_positive() => out.push(Violation::SymmetrizerNonPositive { i }),
                Some(_) => {}
            }
        }
        for &i in &ids {
            for &j in &ids {
                if i >= j {
                    continue;
                }
                if let (Some(si), Some(sj)) = (s.get(&i), s.get(&j)) {
                    if si * d.a(i, j) != sj * d.a(j, i) {
                        out.push(Violation::SymmetrizerMismatch { i, j });
                    }
                }
            }
        }
    }
    out
}

/// Reads a JSON datum descriptor, either
/// `{"indices":[{"id":..,"class":"real"|"imaginary"},..],"matrix":[[..]],"symmetrizer":[..]}`
/// or `{"family":"monster","charges":<path or {"level":mult}>,"max_level":n}`.
/// Relative charge paths are resolved against `base`.
pub fn parse_datum_json(text: &str, base: &std::path::Path) -> Result<BorcherdsCartanDatum> {
    use crate::json::big_from_value;
    use crate::monster::{load_charges, ChargeTable};
    use serde_json::Value;

    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::input("datum descriptor must be a JSON object"))?;
    if let Some(family) = obj.get("family") {
        if family != "monster" {
            return Err(Error::input(format!("unknown family {family}")));
        }
        let charges = match obj.get("charges") {
            None => ChargeTable::embedded(),
            Some(Value::String(p)) => load_charges(&base.join(p))?,
            Some(Value::Object(m)) => {
                let pairs = m
                    .iter()
                    .map(|(k, c)| {
                        let level = k
                            .parse::<i64>()
                            .map_err(|_| Error::input(format!("bad level {k:?}")))?;
                        let mult = c
                            .as_u64()
                            .ok_or_else(|| Error::input(format!("bad multiplicity {c}")))?;
                        Ok((level, mult))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ChargeTable::from_pairs(&pairs)?
            }
            Some(other) => return Err(Error::input(format!("bad charges {other}"))),
        };
        let max_level = match obj.get("max_level") {
            None => 2,
            Some(m) => m
                .as_i64()
                .ok_or_else(|| Error::input(format!("bad max_level {m}")))?,
        };
        return Ok(BorcherdsCartanDatum::monster(MonsterConfig::new(charges, max_level)?));
    }

    #[derive(Deserialize)]
    struct Entry {
        id: IndexId,
        class: IndexClass,
    }
    let entries: Vec<Entry> = serde_json::from_value(
        obj.get("indices")
            .cloned()
            .ok_or_else(|| Error::input("missing \"indices\""))?,
    )?;
    let rows = obj
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("missing \"matrix\""))?;
    let matrix = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::input("matrix rows must be arrays"))?
                .iter()
                .map(big_from_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let ids: Vec<IndexId> = entries.iter().map(|e| e.id).collect();
    let mut d = BorcherdsCartanDatum::explicit(
        entries.into_iter().map(|e| (e.id, e.class)).collect(),
        matrix,
    )?;
    if let Some(s) = obj.get("symmetrizer") {
        let vals = s
            .as_array()
            .ok_or_else(|| Error::input("symmetrizer must be an array"))?;
        if vals.len() != ids.len() {
            return Err(Error::input("symmetrizer length differs from index count"));
        }
        let map = ids
            .iter()
            .zip(vals)
            .map(|(i, v)| Ok((*i, big_from_value(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        d = d.with_symmetrizer(map);
    }
    Ok(d)
}

/// `⟨h_i, w⟩ = Σ_j w_j a_ij`.
pub fn pairing(d: &BorcherdsCartanDatum, i: IndexId, w: &Weight) -> Result<BigInt> {
    if !d.contains(i) {
        return Err(Error::UnknownIndex(i));
    }
    let mut acc = BigInt::zero();
    for (j, c) in w.iter() {
        acc += c * d.entry(i, *j)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monster::ChargeTable;

    fn toy_monster() -> BorcherdsCartanDatum {
        let charges = ChargeTable::from_pairs(&[(1, 2), (2, 1)]).unwrap();
        BorcherdsCartanDatum::monster(MonsterConfig::new(charges, 2).unwrap())
    }

    #[test]
    fn minimal_real_datum_is_valid() {
        let d = BorcherdsCartanDatum::from_rows(&[&[2]]).unwrap();
        assert!(validate_datum(&d, ValidationSample::default()).is_empty());
        assert_eq!(d.class(IndexId::Num(1)).unwrap(), IndexClass::Real);
    }

    #[test]
    fn zero_pattern_violation_is_reported() {
        let d = BorcherdsCartanDatum::from_rows(&[&[2, 0], &[-1, 2]]).unwrap();
        let v = validate_datum(&d, ValidationSample::default());
        assert_eq!(
            v,
            vec![Violation::ZeroPattern {
                i: IndexId::Num(1),
                j: IndexId::Num(2)
            }]
        );
    }

    #[test]
    fn imaginary_diagonal_rules() {
        let d = BorcherdsCartanDatum::from_rows(&[&[-3, -1], &[-1, 1]]).unwrap();
        let v = validate_datum(&d, ValidationSample::default());
        assert!(v.iter().any(|x| matches!(x, Violation::ImaginaryDiagonalOdd { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::ImaginaryDiagonalPositive { .. })));
        // class says imaginary while a_ii = 2
        let d = BorcherdsCartanDatum::explicit(
            vec![(IndexId::Num(1), IndexClass::Real)],
            vec![vec![BigInt::from(-2)]],
        )
        .unwrap();
        assert!(matches!(
            validate_datum(&d, ValidationSample::default())[..],
            [Violation::RealDiagonal { .. }]
        ));
    }

    #[test]
    fn symmetrizer_checked_when_present() {
        let rows: &[&[i64]] = &[&[2, -2], &[-1, 2]];
        let s = |a: i64, b: i64| {
            BTreeMap::from([
                (IndexId::Num(1), BigInt::from(a)),
                (IndexId::Num(2), BigInt::from(b)),
            ])
        };
        let good = BorcherdsCartanDatum::from_rows(rows).unwrap().with_symmetrizer(s(1, 2));
        assert!(validate_datum(&good, ValidationSample::default()).is_empty());
        let bad = BorcherdsCartanDatum::from_rows(rows).unwrap().with_symmetrizer(s(1, 1));
        assert_eq!(
            validate_datum(&bad, ValidationSample::default()),
            vec![Violation::SymmetrizerMismatch {
                i: IndexId::Num(1),
                j: IndexId::Num(2)
            }]
        );
    }

    #[test]
    fn monster_datum_is_valid() {
        let d = toy_monster();
        assert!(validate_datum(&d, ValidationSample::default()).is_empty());
        assert_eq!(d.entry(IndexId::copy(-1, 1), IndexId::copy(-1, 1)).unwrap(), BigInt::from(2));
        assert_eq!(d.entry(IndexId::copy(1, 2), IndexId::copy(2, 1)).unwrap(), BigInt::from(-3));
        assert!(d.entry(IndexId::copy(3, 1), IndexId::copy(1, 1)).is_err());
    }

    #[test]
    fn pairing_examples() {
        let d = BorcherdsCartanDatum::from_rows(&[&[-2, -1], &[-3, 2]]).unwrap();
        assert_eq!(pairing(&d, IndexId::Num(1), &Weight::zero()).unwrap(), BigInt::zero());
        // ⟨h_2, -α_1⟩ = -a_21 = c
        let w = Weight::root(IndexId::Num(1), -1);
        assert_eq!(pairing(&d, IndexId::Num(2), &w).unwrap(), BigInt::from(3));
        assert!(pairing(&d, IndexId::Num(7), &w).is_err());
        assert!(pairing(&d, IndexId::Num(1), &Weight::root(IndexId::Num(9), 1)).is_err());

        let m = toy_monster();
        let w = Weight::root(IndexId::copy(2, 1), -1);
        assert_eq!(pairing(&m, IndexId::copy(1, 1), &w).unwrap(), BigInt::from(3));
    }

    #[test]
    fn index_id_text_round_trip() {
        for id in [IndexId::Num(3), IndexId::Num(-1), IndexId::copy(2, 7), IndexId::copy(-1, 1)] {
            assert_eq!(id.to_string().parse::<IndexId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(serde_json::from_str::<IndexId>(&json).unwrap(), id);
        }
    }

    #[test]
    fn json_descriptors() {
        let base = std::path::Path::new(".");
        let d = parse_datum_json(
            r#"{"indices":[{"id":1,"class":"imaginary"},{"id":2,"class":"real"}],
                "matrix":[[-2,-1],[-1,2]],"symmetrizer":[1,1]}"#,
            base,
        )
        .unwrap();
        assert!(validate_datum(&d, ValidationSample::default()).is_empty());
        assert_eq!(d.class(IndexId::Num(2)).unwrap(), IndexClass::Real);
        let m = parse_datum_json(r#"{"family":"monster","charges":{"1":2,"2":1}}"#, base).unwrap();
        assert_eq!(m.monster_config().unwrap().b(1), 4);
        assert!(parse_datum_json(r#"{"indices":[],"matrix":[]}"#, base).is_err());
        assert!(parse_datum_json(r#"{"family":"e8"}"#, base).is_err());
        assert!(parse_datum_json("[1]", base).is_err());
    }

    #[test]
    fn weight_display() {
        let mut w = Weight::root(IndexId::Num(1), -1);
        w.add_root(IndexId::Num(2), -2);
        assert_eq!(w.to_string(), "-α_1 - 2α_2");
        assert_eq!(Weight::zero().to_string(), "0");
    }
}
