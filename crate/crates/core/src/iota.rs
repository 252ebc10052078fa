//! The infinite index sequence `ι = (…, i_2, i_1)` with 1-based positions.

use std::collections::{BTreeMap, HashSet};

use serde::Deserialize;

use crate::datum::{BorcherdsCartanDatum, IndexId};
use crate::error::{Error, Result};
use crate::monster::MonsterConfig;

#[derive(Clone, Debug)]
enum Layout {
    Periodic {
        prefix: Vec<IndexId>,
        period: Vec<IndexId>,
        /// Distance to the next occurrence within the repeating part.
        next: Vec<usize>,
    },
    Monster(MonsterConfig),
}

#[derive(Clone, Debug)]
pub struct IotaSequence {
    layout: Layout,
}

/// Result of [`check_prefix_constraints`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixReport {
    /// Positions `k` with `i_k = i_{k+1}`.
    pub adjacency: Vec<usize>,
    /// Indices seen in the prefix whose next occurrence lies past the bound.
    pub non_recurring: Vec<(IndexId, usize)>,
}

impl PrefixReport {
    pub fn is_ok(&self) -> bool {
        self.adjacency.is_empty() && self.non_recurring.is_empty()
    }
}

impl IotaSequence {
    /// `prefix` followed by `period` repeated forever, read from position 1.
    pub fn periodic(
        datum: &BorcherdsCartanDatum,
        prefix: Vec<IndexId>,
        period: Vec<IndexId>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::input("period must be nonempty"));
        }
        for &i in prefix.iter().chain(&period) {
            if !datum.contains(i) {
                return Err(Error::UnknownIndex(i));
            }
        }
        match datum.explicit_indices() {
            Some(ids) => {
                let in_period: HashSet<_> = period.iter().collect();
                if let Some(missing) = ids.iter().find(|i| !in_period.contains(i)) {
                    return Err(Error::input(format!(
                        "index {missing} does not occur in the period"
                    )));
                }
            }
            None => return Err(Error::input("periodic sequences need an explicit datum")),
        }
        let n = period.len();
        let next = (0..n)
            .map(|p| (1..=n).find(|d| period[(p + d) % n] == period[p]).unwrap())
            .collect();
        Ok(IotaSequence {
            layout: Layout::Periodic {
                prefix,
                period,
                next,
            },
        })
    }

    /// Pure period with no prefix, indices given as numbers.
    pub fn cyclic(datum: &BorcherdsCartanDatum, period: &[i64]) -> Result<Self> {
        Self::periodic(datum, vec![], period.iter().map(|&n| IndexId::Num(n)).collect())
    }

    /// The block layout: `-1` at position 1 and at each `b(n)`, block `n`
    /// holding the copies of levels `1..=n` in order before its `-1`.
    pub fn monster(cfg: MonsterConfig) -> Self {
        IotaSequence {
            layout: Layout::Monster(cfg),
        }
    }

    pub fn monster_config(&self) -> Option<&MonsterConfig> {
        match &self.layout {
            Layout::Monster(cfg) => Some(cfg),
            Layout::Periodic { .. } => None,
        }
    }

    /// `i_k` for `k >= 1`.
    pub fn index_at(&self, k: usize) -> IndexId {
        assert!(k >= 1, "positions start at 1");
        match &self.layout {
            Layout::Periodic { prefix, period, .. } => {
                if k <= prefix.len() {
                    prefix[k - 1]
                } else {
                    period[(k - prefix.len() - 1) % period.len()]
                }
            }
            Layout::Monster(cfg) => match monster_slot(cfg, k as u64) {
                MonsterSlot::Real { .. } => IndexId::copy(-1, 1),
                MonsterSlot::Copy { level, copy, .. } => IndexId::copy(level, copy),
            },
        }
    }

    /// `k^{(+)}`: the next position carrying `i_k`.
    pub fn kplus(&self, k: usize) -> usize {
        assert!(k >= 1, "positions start at 1");
        match &self.layout {
            Layout::Periodic {
                prefix,
                period,
                next,
            } => {
                let pre = prefix.len();
                if k > pre {
                    return k + next[(k - pre - 1) % period.len()];
                }
                let i = prefix[k - 1];
                (k + 1..).find(|&j| self.index_at(j) == i).unwrap()
            }
            Layout::Monster(cfg) => match monster_slot(cfg, k as u64) {
                MonsterSlot::Real { block } => cfg.b(block + 1) as usize,
                MonsterSlot::Copy { block, offset, .. } => (cfg.b(block) + offset) as usize,
            },
        }
    }

    /// `k^{(-)}`: the previous position carrying `i_k`, or 0.
    pub fn kminus(&self, k: usize) -> usize {
        assert!(k >= 1, "positions start at 1");
        match &self.layout {
            Layout::Periodic { .. } => {
                let i = self.index_at(k);
                (1..k).rev().find(|&j| self.index_at(j) == i).unwrap_or(0)
            }
            Layout::Monster(cfg) => match monster_slot(cfg, k as u64) {
                MonsterSlot::Real { block: 0 } => 0,
                MonsterSlot::Real { block } => cfg.b(block - 1) as usize,
                MonsterSlot::Copy {
                    block,
                    offset,
                    level,
                    ..
                } => {
                    if level as u64 == block {
                        0
                    } else {
                        (cfg.b(block - 2) + offset) as usize
                    }
                }
            },
        }
    }

    /// First position carrying `i`, if any.
    pub fn first_occurrence(&self, i: IndexId) -> Option<usize> {
        match &self.layout {
            Layout::Periodic { prefix, period, .. } => prefix
                .iter()
                .chain(period)
                .position(|&j| j == i)
                .map(|p| p + 1),
            Layout::Monster(cfg) => {
                if !cfg.contains(i) {
                    return None;
                }
                match i {
                    IndexId::Copy { level: -1, .. } => Some(1),
                    IndexId::Copy { level, copy } => {
                        let l = level as u64;
                        Some((cfg.b(l - 1) + cfg.sigma(l - 1) + copy) as usize)
                    }
                    IndexId::Num(_) => None,
                }
            }
        }
    }

    /// Positions of `i` in increasing order.
    pub fn positions_of(&self, i: IndexId) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.first_occurrence(i), move |&k| Some(self.kplus(k)))
    }

    /// Distinct indices at positions `1..=n`, ordered by first occurrence.
    pub fn indices_upto(&self, n: usize) -> Vec<IndexId> {
        let mut seen = HashSet::new();
        (1..=n)
            .map(|k| self.index_at(k))
            .filter(|i| seen.insert(*i))
            .collect()
    }
}

enum MonsterSlot {
    Real { block: u64 },
    Copy { block: u64, offset: u64, level: i64, copy: u64 },
}

fn monster_slot(cfg: &MonsterConfig, k: u64) -> MonsterSlot {
    let block = cfg.block_of(k);
    if block == 0 || cfg.b(block) == k {
        return MonsterSlot::Real { block };
    }
    let offset = k - cfg.b(block - 1);
    let (level, copy) = cfg.slot_at_offset(offset).expect("offset inside block");
    MonsterSlot::Copy {
        block,
        offset,
        level,
        copy,
    }
}

/// Checks `i_k != i_{k+1}` for `k < n` and that every index seen in `1..=n`
/// recurs at or before `recurrence_bound`.
pub fn check_prefix_constraints(s: &IotaSequence, n: usize, recurrence_bound: usize) -> PrefixReport {
    let mut report = PrefixReport::default();
    for k in 1..n {
        if s.index_at(k) == s.index_at(k + 1) {
            report.adjacency.push(k);
        }
    }
    for i in s.indices_upto(n) {
        let first = s.first_occurrence(i).expect("seen index");
        let again = s.kplus(first);
        if again > recurrence_bound {
            report.non_recurring.push((i, again));
        }
    }
    report
}

/// JSON description of a sequence.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IotaDescriptor {
    Periodic {
        #[serde(default)]
        prefix: Vec<IndexId>,
        period: Vec<IndexId>,
    },
    Monster {
        monster: bool,
    },
}

impl IotaDescriptor {
    pub fn build(self, datum: &BorcherdsCartanDatum) -> Result<IotaSequence> {
        match self {
            IotaDescriptor::Periodic { prefix, period } => {
                IotaSequence::periodic(datum, prefix, period)
            }
            IotaDescriptor::Monster { monster: true } => datum
                .monster_config()
                .cloned()
                .map(IotaSequence::monster)
                .ok_or_else(|| Error::input("monster sequence needs a monster datum")),
            IotaDescriptor::Monster { monster: false } => {
                Err(Error::input("\"monster\": false is not a sequence"))
            }
        }
    }
}

/// Summary used by the CLI: the first `n` entries.
pub fn describe(s: &IotaSequence, n: usize) -> BTreeMap<usize, IndexId> {
    (1..=n).map(|k| (k, s.index_at(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2() -> (BorcherdsCartanDatum, IotaSequence) {
        let d = BorcherdsCartanDatum::from_rows(&[&[-2, -1], &[-1, 2]]).unwrap();
        let s = IotaSequence::cyclic(&d, &[1, 2]).unwrap();
        (d, s)
    }

    #[test]
    fn rank2_navigation() {
        let (_, s) = rank2();
        assert_eq!(s.index_at(3), IndexId::Num(1));
        assert_eq!(s.kminus(1), 0);
        assert_eq!(s.kplus(1), 3);
        assert_eq!(s.kminus(4), 2);
        assert_eq!(s.positions_of(IndexId::Num(2)).take(3).collect::<Vec<_>>(), vec![2, 4, 6]);
    }

    #[test]
    fn monster_toy_layout() {
        let s = IotaSequence::monster(MonsterConfig::toy());
        let m1 = IndexId::copy(-1, 1);
        let expect = [
            m1,
            IndexId::copy(1, 1),
            IndexId::copy(1, 2),
            m1,
            IndexId::copy(1, 1),
            IndexId::copy(1, 2),
            IndexId::copy(2, 1),
            m1,
            IndexId::copy(1, 1),
        ];
        for (k, id) in expect.iter().enumerate() {
            assert_eq!(s.index_at(k + 1), *id, "position {}", k + 1);
        }
        assert_eq!(s.kminus(4), 1);
        assert_eq!(s.kplus(1), 4);
        assert_eq!(s.kplus(4), 8);
        assert_eq!(s.kplus(2), 5);
        assert_eq!(s.kminus(5), 2);
        assert_eq!(s.kminus(7), 0);
        assert_eq!(s.kplus(7), 11);
        assert_eq!(s.first_occurrence(IndexId::copy(2, 1)), Some(7));
        assert_eq!(s.first_occurrence(IndexId::copy(3, 1)), None);
    }

    #[test]
    fn navigation_inverse_on_presets() {
        let (_, s) = rank2();
        let m = IotaSequence::monster(MonsterConfig::toy());
        for seq in [&s, &m] {
            for k in 1..60 {
                let p = seq.kplus(k);
                assert_eq!(seq.index_at(p), seq.index_at(k));
                assert_eq!(seq.kminus(p), k);
                let q = seq.kminus(k);
                if q != 0 {
                    assert_eq!(seq.kplus(q), k);
                }
                assert!((k + 1..p).all(|j| seq.index_at(j) != seq.index_at(k)));
            }
        }
    }

    #[test]
    fn prefix_constraints() {
        let d = BorcherdsCartanDatum::from_rows(&[&[-2]]).unwrap();
        let s = IotaSequence::cyclic(&d, &[1, 1]).unwrap();
        assert_eq!(check_prefix_constraints(&s, 5, 10).adjacency[0], 1);

        let d = BorcherdsCartanDatum::from_rows(&[&[-2, -1, -1], &[-1, -2, -1], &[-1, -1, 2]]).unwrap();
        let s = IotaSequence::cyclic(&d, &[1, 2, 3]).unwrap();
        assert!(check_prefix_constraints(&s, 20, 40).is_ok());

        let m = IotaSequence::monster(MonsterConfig::toy());
        assert!(check_prefix_constraints(&m, 30, 60).is_ok());
    }

    #[test]
    fn periodic_requires_every_index() {
        let (d, _) = rank2();
        assert!(IotaSequence::cyclic(&d, &[1]).is_err());
        assert!(IotaSequence::cyclic(&d, &[1, 2, 3]).is_err());
        let s = IotaSequence::periodic(&d, vec![IndexId::Num(2)], vec![IndexId::Num(1), IndexId::Num(2)])
            .unwrap();
        assert_eq!(s.kplus(1), 3);
        assert_eq!(s.kminus(3), 1);
        assert_eq!(s.kminus(2), 0);
    }

    #[test]
    fn descriptor_parsing() {
        let (d, _) = rank2();
        let desc: IotaDescriptor = serde_json::from_str(r#"{"period":[1,2]}"#).unwrap();
        let s = desc.build(&d).unwrap();
        assert_eq!(s.index_at(2), IndexId::Num(2));
        let desc: IotaDescriptor = serde_json::from_str(r#"{"monster":true}"#).unwrap();
        assert!(desc.build(&d).is_err());
    }
}
