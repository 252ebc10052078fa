#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use polycrystal::{IndexId, PathVector, SequenceCrystal, Weight};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every vector of degree at most `depth` supported in `1..=window`.
pub fn box_universe(depth: u64, window: usize) -> Vec<PathVector> {
    fn rec(k: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<PathVector>) {
        if k == cur.len() {
            out.push(PathVector::from_le(cur));
            return;
        }
        for v in 0..=left {
            cur[k] = v;
            rec(k + 1, left - v, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, depth, &mut vec![0; window], &mut out);
    out
}

/// Plain sequential closure of `0` under `f̃`, kept inside the window.
pub fn naive_closure(z: &SequenceCrystal, depth: u64, window: usize) -> HashSet<PathVector> {
    let indices = z.iota().indices_upto(window);
    let mut seen = HashSet::from([PathVector::zero()]);
    let mut queue = VecDeque::from([PathVector::zero()]);
    while let Some(x) = queue.pop_front() {
        if x.degree() == depth {
            continue;
        }
        for &i in &indices {
            let y = z.f_tilde(&x, i);
            if y.max_position().is_some_and(|m| m > window) {
                continue;
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `−Σ x_k α_{i_k}` straight from the sequence.
pub fn weight_of(z: &SequenceCrystal, x: &PathVector) -> Weight {
    let mut w = Weight::zero();
    for (k, v) in x.iter() {
        w.add_root(z.iota().index_at(k), -(v as i64));
    }
    w
}

pub fn histogram(z: &SequenceCrystal, xs: &[PathVector]) -> BTreeMap<u64, BTreeMap<Weight, u64>> {
    let mut out: BTreeMap<u64, BTreeMap<Weight, u64>> = BTreeMap::new();
    for x in xs {
        *out.entry(x.degree()).or_default().entry(weight_of(z, x)).or_insert(0) += 1;
    }
    out
}

/// Sparse random vector: up to `nonzero` positions in `1..=window`, entries in `1..=max`.
pub fn random_vector(rng: &mut ChaCha8Rng, window: usize, nonzero: usize, max: u64) -> PathVector {
    let mut x = PathVector::zero();
    for _ in 0..rng.gen_range(0..=nonzero) {
        x.set(rng.gen_range(1..=window), rng.gen_range(1..=max));
    }
    x
}

pub fn ids(z: &SequenceCrystal, window: usize) -> Vec<IndexId> {
    z.iota().indices_upto(window)
}
