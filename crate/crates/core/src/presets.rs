//! Ready-made data and sequences.

use std::sync::Arc;

use itertools::Itertools;

use crate::datum::BorcherdsCartanDatum;
use crate::error::Result;
use crate::iota::IotaSequence;
use crate::monster::MonsterConfig;
use crate::zinfty::SequenceCrystal;

fn cyclic(rows: &[&[i64]], period: &[i64]) -> Result<SequenceCrystal> {
    let d = BorcherdsCartanDatum::from_rows(rows)?;
    let s = IotaSequence::cyclic(&d, period)?;
    Ok(SequenceCrystal::new(Arc::new(d), Arc::new(s)))
}

/// `[[-a, -b], [-c, 2]]` with `ι = (…, 2, 1, 2, 1)`.
pub fn rank2(a: i64, b: i64, c: i64) -> Result<SequenceCrystal> {
    cyclic(&[&[-a, -b], &[-c, 2]], &[1, 2])
}

/// `[[-a, -b, -c], [-d, -e, -f], [-g, -h, 2]]` with `ι = (…, 3, 2, 1)`.
pub fn rank3(p: [i64; 8]) -> Result<SequenceCrystal> {
    let [a, b, c, d, e, f, g, h] = p;
    cyclic(&[&[-a, -b, -c], &[-d, -e, -f], &[-g, -h, 2]], &[1, 2, 3])
}

/// `[[-2, a12], [a12, -4]]` with `ι = (…, 2, 1, 2, 1)`.
pub fn all_imaginary(a12: i64) -> Result<SequenceCrystal> {
    cyclic(&[&[-2, a12], &[a12, -4]], &[1, 2])
}

/// `[[2]]` with `ι = (…, 1, 1)`; adjacency fails but the crystal is defined.
pub fn sl2() -> Result<SequenceCrystal> {
    cyclic(&[&[2]], &[1])
}

pub fn monster(cfg: MonsterConfig) -> SequenceCrystal {
    let s = IotaSequence::monster(cfg.clone());
    let d = BorcherdsCartanDatum::monster(cfg);
    SequenceCrystal::new(Arc::new(d), Arc::new(s))
}

/// Named presets used by tests and the command line.
pub fn named() -> Vec<(String, SequenceCrystal)> {
    let mut out = Vec::new();
    for (a, b, c) in [(0, 0, 0), (2, 1, 1), (4, 2, 3), (2, 0, 1)] {
        out.push((format!("rank2({a},{b},{c})"), rank2(a, b, c).unwrap()));
    }
    for p in RANK3_TUPLES {
        let name = p.iter().join(",");
        out.push((format!("rank3({name})"), rank3(p).unwrap()));
    }
    for a12 in [0, -1] {
        out.push((format!("all-imaginary(a12={a12})"), all_imaginary(a12).unwrap()));
    }
    out.push(("monster(toy)".into(), monster(MonsterConfig::toy())));
    out
}

pub const RANK3_TUPLES: [[i64; 8]; 2] = [[1, 1, 1, 1, 1, 1, 1, 1], [2, 1, 2, 1, 0, 1, 2, 1]];
