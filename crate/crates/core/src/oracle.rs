//! Brute-force enumeration of the image of `B(∞)` as the `f̃`-closure of the
//! zero vector, with graph export and weight histograms.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::{IndexId, Weight};
use crate::error::{Error, Result};
use crate::zinfty::{PathVector, SequenceCrystal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub label: IndexId,
    pub dst: usize,
}

/// Nodes are sorted by degree, then by little-endian entries; edges follow
/// `f̃` and are sorted by `(src, label)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub depth: u64,
    pub window: usize,
    pub nodes: Vec<PathVector>,
    pub edges: Vec<Edge>,
    /// `f̃` results dropped because they left positions `1..=window`.
    #[serde(default)]
    pub escaped: usize,
}

impl CrystalGraph {
    pub fn node_set(&self) -> HashSet<&PathVector> {
        self.nodes.iter().collect()
    }

    /// Largest position used by any node.
    pub fn max_position(&self) -> usize {
        self.nodes.iter().filter_map(|x| x.max_position()).max().unwrap_or(0)
    }

    pub fn count_at_degree(&self, d: u64) -> usize {
        self.nodes.iter().filter(|x| x.degree() == d).count()
    }
}

fn node_key(x: &PathVector) -> (u64, Vec<u64>) {
    (x.degree(), x.to_le())
}

/// Closure of `{0}` under `f̃_i` for every index occurring in positions
/// `1..=window`, keeping vectors of degree at most `depth` supported in the
/// window.
pub fn bfs_image(z: &SequenceCrystal, depth: u64, window: usize) -> CrystalGraph {
    let indices = z.iota().indices_upto(window);
    let mut seen: HashSet<PathVector> = HashSet::from([PathVector::zero()]);
    let mut frontier = vec![PathVector::zero()];
    let mut raw_edges: Vec<(PathVector, IndexId, PathVector)> = Vec::new();
    let mut escaped = 0;
    for _ in 0..depth {
        let step: Vec<(PathVector, IndexId, PathVector)> = frontier
            .par_iter()
            .flat_map_iter(|x| {
                indices
                    .iter()
                    .map(move |&i| (x.clone(), i, z.f_tilde(x, i)))
            })
            .collect();
        let mut next = Vec::new();
        for (x, i, y) in step {
            if y.max_position().is_some_and(|m| m > window) {
                escaped += 1;
                continue;
            }
            if seen.insert(y.clone()) {
                next.push(y.clone());
            }
            raw_edges.push((x, i, y));
        }
        frontier = next;
    }
    let mut nodes: Vec<PathVector> = seen.into_iter().collect();
    nodes.sort_by_cached_key(node_key);
    let slot: HashMap<&PathVector, usize> = nodes.iter().enumerate().map(|(n, x)| (x, n)).collect();
    let mut edges: Vec<Edge> = raw_edges
        .iter()
        .map(|(x, i, y)| Edge {
            src: slot[x],
            label: *i,
            dst: slot[y],
        })
        .collect();
    edges.sort_by_key(|e| (e.src, e.label, e.dst));
    CrystalGraph {
        depth,
        window,
        nodes,
        edges,
        escaped,
    }
}

/// Default window `3·depth` (at least 1).
pub fn default_window(depth: u64) -> usize {
    (3 * depth as usize).max(1)
}

/// Nodes `x != 0` for which no `ẽ_i` gives another node of the graph.
pub fn unraisable_nodes(z: &SequenceCrystal, g: &CrystalGraph) -> Vec<PathVector> {
    let set = g.node_set();
    let indices = z.iota().indices_upto(g.window);
    g.nodes
        .par_iter()
        .filter(|x| {
            !x.is_zero()
                && !indices
                    .iter()
                    .any(|&i| z.e_tilde(x, i).is_some_and(|y| set.contains(&y)))
        })
        .cloned()
        .collect()
}

/// Weight histogram per degree.
pub type Character = BTreeMap<u64, BTreeMap<Weight, u64>>;

/// `Σ e^{wt(x)}` over the nodes, split by degree. With `collapse`, Monster
/// copies `(level, t)` are merged into their level.
pub fn character(z: &SequenceCrystal, g: &CrystalGraph, collapse: bool) -> Character {
    let mut out = Character::new();
    for x in &g.nodes {
        let mut w = z.wt(x);
        if collapse {
            w = collapse_levels(&w);
        }
        *out.entry(x.degree()).or_default().entry(w).or_insert(0) += 1;
    }
    out
}

pub fn collapse_levels(w: &Weight) -> Weight {
    w.map_ids(|i| match i {
        IndexId::Copy { level, .. } => IndexId::Num(level),
        other => other,
    })
}

pub fn export_dot(g: &CrystalGraph) -> String {
    let mut s = String::from("digraph crystal {\n");
    for (n, x) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{n} [label=\"{x}\"];");
    }
    for e in &g.edges {
        let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.src, e.dst, e.label);
    }
    s.push_str("}\n");
    s
}

pub fn export_json(g: &CrystalGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serializes")
}

pub fn parse_json(text: &str) -> Result<CrystalGraph> {
    let g: CrystalGraph = serde_json::from_str(text)?;
    let n = g.nodes.len();
    if let Some(e) = g.edges.iter().find(|e| e.src >= n || e.dst >= n) {
        return Err(Error::input(format!("edge {}->{} out of range", e.src, e.dst)));
    }
    Ok(g)
}
