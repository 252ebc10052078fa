//! Monster Lie algebra data: charge tables, block layout of the sequence and
//! the closed-form image test.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::datum::IndexId;
use crate::error::{Error, Result};
use crate::zinfty::PathVector;

pub const DEFAULT_C1: u64 = 196_884;
pub const DEFAULT_C2: u64 = 21_493_760;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChargeSource {
    Embedded,
    Inline,
    File(std::path::PathBuf),
}

/// Multiplicities `c(i)` of the imaginary levels; `c(-1) = 1` implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeTable {
    levels: BTreeMap<i64, u64>,
    source: ChargeSource,
}

impl ChargeTable {
    /// The two coefficients shipped with the crate.
    pub fn embedded() -> Self {
        ChargeTable {
            levels: BTreeMap::from([(1, DEFAULT_C1), (2, DEFAULT_C2)]),
            source: ChargeSource::Embedded,
        }
    }

    /// A table holding exactly the given `(level, multiplicity)` pairs.
    pub fn from_pairs(pairs: &[(i64, u64)]) -> Result<Self> {
        let mut levels = BTreeMap::new();
        for &(level, mult) in pairs {
            check_entry(level, mult).map_err(Error::input)?;
            if levels.insert(level, mult).is_some() {
                return Err(Error::input(format!("duplicate level {level}")));
            }
        }
        Ok(ChargeTable {
            levels,
            source: ChargeSource::Inline,
        })
    }

    pub fn source(&self) -> &ChargeSource {
        &self.source
    }

    /// `c(level)` if declared; `c(-1) = 1`.
    pub fn get(&self, level: i64) -> Option<u64> {
        if level == -1 {
            Some(1)
        } else {
            self.levels.get(&level).copied()
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.levels.iter().map(|(l, c)| (*l, *c))
    }

    pub fn max_declared_level(&self) -> Option<i64> {
        self.levels.keys().next_back().copied()
    }

    /// Text form accepted by [`parse_charges`].
    pub fn to_text(&self) -> String {
        self.levels.iter().map(|(l, c)| format!("{l} {c}\n")).collect()
    }
}

fn check_entry(level: i64, mult: u64) -> std::result::Result<(), String> {
    if level < 1 {
        return Err(format!("level {level} must be a positive integer"));
    }
    if mult == 0 {
        return Err(format!("multiplicity for level {level} must be positive"));
    }
    Ok(())
}

/// Parses `<level> <multiplicity>` lines (blank lines and `#` comments
/// allowed) and merges them over the embedded defaults.
pub fn parse_charges(text: &str, path: &Path) -> Result<ChargeTable> {
    let mut table = ChargeTable::embedded();
    let mut seen = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [level, mult] = fields[..] else {
            return Err(err(format!("expected \"<level> <multiplicity>\", got {line:?}")));
        };
        let level: i64 = level.parse().map_err(|_| err(format!("bad level {level:?}")))?;
        let mult: i64 = mult
            .parse()
            .map_err(|_| err(format!("bad multiplicity {mult:?}")))?;
        if mult <= 0 {
            return Err(err(format!("multiplicity for level {level} must be positive")));
        }
        check_entry(level, mult as u64).map_err(err)?;
        if seen.insert(level, n + 1).is_some() {
            return Err(err(format!("duplicate level {level}")));
        }
        table.levels.insert(level, mult as u64);
    }
    table.source = ChargeSource::File(path.to_path_buf());
    Ok(table)
}

pub fn load_charges(path: &Path) -> Result<ChargeTable> {
    let text = std::fs::read_to_string(path)?;
    parse_charges(&text, path)
}

/// `b(n) = n c(1) + (n-1) c(2) + ... + c(n) + n + 1`, requiring every charge
/// through level `n`.
pub fn b(n: u64, charges: &ChargeTable) -> Result<u64> {
    let mut acc = n + 1;
    for k in 1..=n {
        let c = charges.get(k as i64).ok_or(Error::MissingCharge(k as i64))?;
        acc += (n - k + 1) * c;
    }
    Ok(acc)
}

/// `σ(n) = c(1) + ... + c(n)`.
pub fn sigma_sum(n: u64, charges: &ChargeTable) -> Result<u64> {
    (1..=n).try_fold(0u64, |acc, k| {
        charges
            .get(k as i64)
            .map(|c| acc + c)
            .ok_or(Error::MissingCharge(k as i64))
    })
}

/// Charges truncated at `max_level`: levels above it have multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonsterConfig {
    charges: ChargeTable,
    max_level: i64,
    /// `c(1..=max_level)`, index 0 unused.
    c: Vec<u64>,
    /// `σ(0..=max_level)`.
    sigma: Vec<u64>,
}

impl MonsterConfig {
    pub fn new(charges: ChargeTable, max_level: i64) -> Result<Self> {
        if max_level < 1 {
            return Err(Error::input("max_level must be at least 1"));
        }
        let mut c = vec![0];
        let mut sigma = vec![0];
        for level in 1..=max_level {
            let v = charges.get(level).ok_or(Error::MissingCharge(level))?;
            c.push(v);
            sigma.push(sigma[sigma.len() - 1] + v);
        }
        Ok(MonsterConfig {
            charges,
            max_level,
            c,
            sigma,
        })
    }

    /// Toy charges `c = (2, 1)` with `max_level = 2`.
    pub fn toy() -> Self {
        Self::new(ChargeTable::from_pairs(&[(1, 2), (2, 1)]).unwrap(), 2).unwrap()
    }

    pub fn real() -> Self {
        Self::new(ChargeTable::embedded(), 2).unwrap()
    }

    pub fn charges(&self) -> &ChargeTable {
        &self.charges
    }

    pub fn max_level(&self) -> i64 {
        self.max_level
    }

    /// Truncated `c(level)`.
    pub fn charge(&self, level: i64) -> u64 {
        match level {
            -1 => 1,
            l if l >= 1 && l <= self.max_level => self.c[l as usize],
            _ => 0,
        }
    }

    /// Truncated `σ(n)`.
    pub fn sigma(&self, n: u64) -> u64 {
        self.sigma[(n as usize).min(self.max_level as usize)]
    }

    /// Truncated `b(n)`, with `b(0) = 1`.
    pub fn b(&self, n: u64) -> u64 {
        let top = n.min(self.max_level as u64);
        (1..=top).map(|k| (n - k + 1) * self.c[k as usize]).sum::<u64>() + n + 1
    }

    pub fn contains(&self, i: IndexId) -> bool {
        match i {
            IndexId::Copy { level: -1, copy } => copy == 1,
            IndexId::Copy { level, copy } => copy >= 1 && copy <= self.charge(level),
            IndexId::Num(_) => false,
        }
    }

    /// Block `n` covering position `k`, i.e. `b(n-1) < k <= b(n)`; `0` for `k = 1`.
    pub fn block_of(&self, k: u64) -> u64 {
        if k <= 1 {
            return 0;
        }
        let (mut lo, mut hi) = (1u64, 1u64);
        while self.b(hi) < k {
            lo = hi + 1;
            hi *= 2;
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.b(mid) < k {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Level and copy at offset `o` (1-based) inside a block, or `None` for
    /// the trailing `-1`.
    pub(crate) fn slot_at_offset(&self, o: u64) -> Option<(i64, u64)> {
        let top = self.max_level as usize;
        if o > self.sigma[top] {
            return None;
        }
        let l = self.sigma.partition_point(|&s| s < o);
        Some((l as i64, o - self.sigma[l - 1]))
    }

    /// `T_n(x)`: the value of `S_{b(n)} x_{b(n)}` on `x`.
    pub fn slack(&self, x: &PathVector, n: u64) -> BigInt {
        let bn = self.b(n);
        let mut acc = BigInt::zero();
        for k in 1..=n {
            let (from, to) = (bn + self.sigma(k) + 1, bn + self.sigma(k + 1));
            if from <= to {
                let s: u64 = x.range(from as usize, to as usize).map(|(_, v)| v).sum();
                acc += BigInt::from(k) * BigInt::from(s);
            }
        }
        acc - BigInt::from(x.get((bn + self.sigma(n + 1) + 1) as usize))
    }

    fn is_real_position(&self, k: u64) -> bool {
        k == 1 || self.b(self.block_of(k)) == k
    }
}

/// Closed-form image test for the Monster sequence.
///
/// Errors when the charge table declares levels above `max_level` and the
/// support of `x` reaches a block where truncation would drop them.
pub fn monster_member(x: &PathVector, cfg: &MonsterConfig) -> Result<bool> {
    let Some(top) = x.max_position() else {
        return Ok(true);
    };
    let top = top as u64;
    let last_block = cfg.block_of(top);
    if let Some(declared) = cfg.charges.max_declared_level() {
        if declared > cfg.max_level && last_block > cfg.max_level as u64 {
            return Err(Error::input(format!(
                "support reaches block {last_block}, beyond max_level {}",
                cfg.max_level
            )));
        }
    }

    // S_1 x_1 = -x_{b(1)} and T_n >= 0 for all blocks touched by x.
    if x.get(cfg.b(1) as usize) != 0 {
        return Ok(false);
    }
    for n in 1..=last_block {
        if cfg.slack(x, n).is_negative() {
            return Ok(false);
        }
    }

    // Sign condition at imaginary positions.
    for (k, _) in x.iter() {
        let k = k as u64;
        if cfg.is_real_position(k) {
            continue;
        }
        let n = cfg.block_of(k);
        let o = k - cfg.b(n - 1);
        let (level, _) = cfg.slot_at_offset(o).expect("imaginary slot");
        if level as u64 == n {
            continue; // first occurrence: k^- = 0
        }
        let km = cfg.b(n - 2) + o;
        let mut imag_sum = BigInt::zero();
        let mut real_sum = BigInt::zero();
        for (j, v) in x.range(km as usize + 1, k as usize - 1) {
            let j = j as u64;
            let lj = if cfg.is_real_position(j) {
                -1
            } else {
                let nj = cfg.block_of(j);
                cfg.slot_at_offset(j - cfg.b(nj - 1)).expect("imaginary slot").0
            };
            let term = BigInt::from(-(level + lj)) * BigInt::from(v);
            if lj == -1 {
                real_sum += term;
            } else {
                imag_sum += term;
            }
        }
        if !(&imag_sum + &real_sum).is_negative() {
            return Ok(false);
        }
        if imag_sum.is_zero() {
            // the only -1 strictly between k^- and k is b(n-1)
            let m = n - 1;
            let bm = cfg.b(m);
            if !(km < bm && bm < k && cfg.slack(x, m).is_positive()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
