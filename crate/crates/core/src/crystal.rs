//! Abstract crystals: elementary crystals, the tensor product rule and an
//! axiom checker.

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::datum::{pairing, BorcherdsCartanDatum, IndexId, Weight};
use crate::iota::IotaSequence;
use crate::zinfty::{PathVector, SequenceCrystal};

/// `Z ∪ {−∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(BigInt),
}

impl ExtInt {
    pub fn fin(v: impl Into<BigInt>) -> Self {
        ExtInt::Fin(v.into())
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtInt::NegInf)
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::NegInf, ExtInt::NegInf) => Ordering::Equal,
            (ExtInt::NegInf, _) => Ordering::Less,
            (_, ExtInt::NegInf) => Ordering::Greater,
            (ExtInt::Fin(a), ExtInt::Fin(b)) => a.cmp(b),
        }
    }
}

impl Add<&BigInt> for &ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: &BigInt) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Fin(a) => ExtInt::Fin(a + rhs),
        }
    }
}

impl Sub<&BigInt> for &ExtInt {
    type Output = ExtInt;

    fn sub(self, rhs: &BigInt) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Fin(a) => ExtInt::Fin(a - rhs),
        }
    }
}

impl Add for &ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: &ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// A crystal structure on a set of elements; `None` is the null element.
pub trait Crystal {
    type Elem: Clone + Eq + Hash + Debug;

    fn datum(&self) -> &BorcherdsCartanDatum;
    fn wt(&self, b: &Self::Elem) -> Weight;
    fn eps(&self, b: &Self::Elem, i: IndexId) -> ExtInt;
    fn phi(&self, b: &Self::Elem, i: IndexId) -> ExtInt;
    fn e_tilde(&self, b: &Self::Elem, i: IndexId) -> Option<Self::Elem>;
    fn f_tilde(&self, b: &Self::Elem, i: IndexId) -> Option<Self::Elem>;
}

/// `b_i(−n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryElem {
    pub i: IndexId,
    pub n: u64,
}

impl fmt::Display for ElementaryElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b_{}(-{})", self.i, self.n)
    }
}

/// The union of all elementary crystals `B_i` over a datum.
#[derive(Clone, Debug)]
pub struct ElementaryCrystal {
    datum: Arc<BorcherdsCartanDatum>,
}

impl ElementaryCrystal {
    pub fn new(datum: Arc<BorcherdsCartanDatum>) -> Self {
        ElementaryCrystal { datum }
    }
}

impl Crystal for ElementaryCrystal {
    type Elem = ElementaryElem;

    fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    fn wt(&self, b: &ElementaryElem) -> Weight {
        Weight::root(b.i, -BigInt::from(b.n))
    }

    fn eps(&self, b: &ElementaryElem, j: IndexId) -> ExtInt {
        if j != b.i {
            ExtInt::NegInf
        } else if self.datum.is_real(j) {
            ExtInt::fin(b.n)
        } else {
            ExtInt::fin(0)
        }
    }

    fn phi(&self, b: &ElementaryElem, j: IndexId) -> ExtInt {
        if j != b.i {
            ExtInt::NegInf
        } else if self.datum.is_real(j) {
            ExtInt::Fin(-BigInt::from(b.n))
        } else {
            ExtInt::Fin(-BigInt::from(b.n) * self.datum.a(j, j))
        }
    }

    fn e_tilde(&self, b: &ElementaryElem, j: IndexId) -> Option<ElementaryElem> {
        (j == b.i && b.n > 0).then(|| ElementaryElem { i: b.i, n: b.n - 1 })
    }

    fn f_tilde(&self, b: &ElementaryElem, j: IndexId) -> Option<ElementaryElem> {
        (j == b.i).then(|| ElementaryElem { i: b.i, n: b.n + 1 })
    }
}

enum Side {
    Left,
    Right,
    Null,
}

fn f_side(phi_b: &ExtInt, eps_b2: &ExtInt) -> Side {
    if phi_b > eps_b2 {
        Side::Left
    } else {
        Side::Right
    }
}

fn e_side(real: bool, aii: &BigInt, phi_b: &ExtInt, eps_b2: &ExtInt) -> Side {
    if real {
        if phi_b >= eps_b2 {
            Side::Left
        } else {
            Side::Right
        }
    } else if *phi_b > eps_b2 - aii {
        Side::Left
    } else if phi_b > eps_b2 {
        Side::Null
    } else {
        Side::Right
    }
}

/// `B₁ ⊗ B₂` with elements `b ⊗ b′` stored as pairs.
#[derive(Clone, Debug)]
pub struct TensorPair<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Crystal, B: Crystal> Crystal for TensorPair<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn datum(&self) -> &BorcherdsCartanDatum {
        self.left.datum()
    }

    fn wt(&self, (b, b2): &Self::Elem) -> Weight {
        &self.left.wt(b) + &self.right.wt(b2)
    }

    fn eps(&self, (b, b2): &Self::Elem, i: IndexId) -> ExtInt {
        let h = pairing(self.datum(), i, &self.left.wt(b)).expect("datum index");
        self.left.eps(b, i).max(&self.right.eps(b2, i) - &h)
    }

    fn phi(&self, (b, b2): &Self::Elem, i: IndexId) -> ExtInt {
        let h = pairing(self.datum(), i, &self.right.wt(b2)).expect("datum index");
        (&self.left.phi(b, i) + &h).max(self.right.phi(b2, i))
    }

    fn f_tilde(&self, (b, b2): &Self::Elem, i: IndexId) -> Option<Self::Elem> {
        match f_side(&self.left.phi(b, i), &self.right.eps(b2, i)) {
            Side::Left => self.left.f_tilde(b, i).map(|x| (x, b2.clone())),
            _ => self.right.f_tilde(b2, i).map(|y| (b.clone(), y)),
        }
    }

    fn e_tilde(&self, (b, b2): &Self::Elem, i: IndexId) -> Option<Self::Elem> {
        let d = self.datum();
        let side = e_side(d.is_real(i), &d.a(i, i), &self.left.phi(b, i), &self.right.eps(b2, i));
        match side {
            Side::Left => self.left.e_tilde(b, i).map(|x| (x, b2.clone())),
            Side::Right => self.right.e_tilde(b2, i).map(|y| (b.clone(), y)),
            Side::Null => None,
        }
    }
}

/// Flat `b_1 ⊗ b_2 ⊗ … ⊗ b_n` over one base crystal, bracketed as a left
/// fold `((b_1 ⊗ b_2) ⊗ …) ⊗ b_n`.
#[derive(Clone, Debug)]
pub struct TensorCrystal<C> {
    pub base: C,
}

impl<C: Crystal> TensorCrystal<C> {
    pub fn new(base: C) -> Self {
        TensorCrystal { base }
    }

    fn pairings(&self, t: &[C::Elem], i: IndexId) -> Vec<BigInt> {
        t.iter()
            .map(|b| pairing(self.base.datum(), i, &self.base.wt(b)).expect("datum index"))
            .collect()
    }

    /// `φ_i` of every prefix `b_1 ⊗ … ⊗ b_k`.
    fn prefix_phi(&self, t: &[C::Elem], i: IndexId) -> Vec<ExtInt> {
        let h = self.pairings(t, i);
        let mut out: Vec<ExtInt> = Vec::with_capacity(t.len());
        for (k, b) in t.iter().enumerate() {
            let cur = self.base.phi(b, i);
            let next = match out.last() {
                None => cur,
                Some(prev) => (prev + &h[k]).max(cur),
            };
            out.push(next);
        }
        out
    }

    fn act(&self, t: &[C::Elem], k: usize, y: Option<C::Elem>) -> Option<Vec<C::Elem>> {
        let y = y?;
        let mut out = t.to_vec();
        out[k] = y;
        Some(out)
    }
}

impl<C: Crystal> Crystal for TensorCrystal<C> {
    type Elem = Vec<C::Elem>;

    fn datum(&self) -> &BorcherdsCartanDatum {
        self.base.datum()
    }

    fn wt(&self, t: &Self::Elem) -> Weight {
        t.iter().fold(Weight::zero(), |acc, b| &acc + &self.base.wt(b))
    }

    fn eps(&self, t: &Self::Elem, i: IndexId) -> ExtInt {
        let h = self.pairings(t, i);
        let mut acc: Option<ExtInt> = None;
        let mut hsum = BigInt::zero();
        for (k, b) in t.iter().enumerate() {
            let cur = self.base.eps(b, i);
            acc = Some(match acc {
                None => cur,
                Some(prev) => prev.max(&cur - &hsum),
            });
            hsum += &h[k];
        }
        acc.expect("nonempty tensor")
    }

    fn phi(&self, t: &Self::Elem, i: IndexId) -> ExtInt {
        self.prefix_phi(t, i).pop().expect("nonempty tensor")
    }

    fn f_tilde(&self, t: &Self::Elem, i: IndexId) -> Option<Self::Elem> {
        let pre = self.prefix_phi(t, i);
        for k in (1..t.len()).rev() {
            if let Side::Right = f_side(&pre[k - 1], &self.base.eps(&t[k], i)) {
                return self.act(t, k, self.base.f_tilde(&t[k], i));
            }
        }
        self.act(t, 0, self.base.f_tilde(&t[0], i))
    }

    fn e_tilde(&self, t: &Self::Elem, i: IndexId) -> Option<Self::Elem> {
        let d = self.datum();
        let (real, aii) = (d.is_real(i), d.a(i, i));
        let pre = self.prefix_phi(t, i);
        for k in (1..t.len()).rev() {
            match e_side(real, &aii, &pre[k - 1], &self.base.eps(&t[k], i)) {
                Side::Left => continue,
                Side::Null => return None,
                Side::Right => return self.act(t, k, self.base.e_tilde(&t[k], i)),
            }
        }
        self.act(t, 0, self.base.e_tilde(&t[0], i))
    }
}

impl Crystal for SequenceCrystal {
    type Elem = PathVector;

    fn datum(&self) -> &BorcherdsCartanDatum {
        SequenceCrystal::datum(self)
    }

    fn wt(&self, x: &PathVector) -> Weight {
        SequenceCrystal::wt(self, x)
    }

    fn eps(&self, x: &PathVector, i: IndexId) -> ExtInt {
        ExtInt::Fin(SequenceCrystal::eps(self, x, i))
    }

    fn phi(&self, x: &PathVector, i: IndexId) -> ExtInt {
        ExtInt::Fin(SequenceCrystal::phi(self, x, i))
    }

    fn e_tilde(&self, x: &PathVector, i: IndexId) -> Option<PathVector> {
        SequenceCrystal::e_tilde(self, x, i)
    }

    fn f_tilde(&self, x: &PathVector, i: IndexId) -> Option<PathVector> {
        Some(SequenceCrystal::f_tilde(self, x, i))
    }
}

/// Window width used to view `x` as a tensor: the largest first occurrence,
/// past the support, of any index in `indices`.
pub fn window_width(iota: &IotaSequence, x: &PathVector, indices: &[IndexId]) -> usize {
    let top = x.max_position().unwrap_or(0);
    indices
        .iter()
        .filter_map(|&i| iota.positions_of(i).find(|&k| k > top))
        .max()
        .unwrap_or(top)
        .max(top)
}

/// `b_{i_W}(−x_W) ⊗ … ⊗ b_{i_1}(−x_1)`, leftmost factor first.
pub fn tensor_window(iota: &IotaSequence, x: &PathVector, width: usize) -> Vec<ElementaryElem> {
    (1..=width)
        .rev()
        .map(|k| ElementaryElem {
            i: iota.index_at(k),
            n: x.get(k),
        })
        .collect()
}

/// Inverse of [`tensor_window`].
pub fn from_tensor_window(t: &[ElementaryElem]) -> PathVector {
    let w = t.len();
    let mut x = PathVector::zero();
    for (p, b) in t.iter().enumerate() {
        x.set(w - p, b.n);
    }
    x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `wt(ẽ b) = wt b + α_i`.
    RaiseWeight,
    /// `wt(f̃ b) = wt b − α_i`.
    LowerWeight,
    /// `φ = ε + ⟨h_i, wt⟩`.
    PhiEpsWeight,
    /// `f̃ b = b′ ⇔ b = ẽ b′`.
    Inverse,
    /// ε/φ shift under ẽ.
    RaiseShift,
    /// ε/φ shift under f̃.
    LowerShift,
    /// `φ = −∞ ⇒ ẽ b = f̃ b = 0`.
    NegInfNull,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::RaiseWeight => "raising shifts weight by +alpha_i",
            Axiom::LowerWeight => "lowering shifts weight by -alpha_i",
            Axiom::PhiEpsWeight => "phi = eps + <h_i, wt>",
            Axiom::Inverse => "f and e are mutually inverse",
            Axiom::RaiseShift => "eps/phi shift under e",
            Axiom::LowerShift => "eps/phi shift under f",
            Axiom::NegInfNull => "phi = -inf forces null operators",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub i: IndexId,
    pub elem: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

/// Checks every axiom on each sampled element and index. The inverse axiom
/// is checked in both directions starting from `b`.
pub fn axiom_check<C: Crystal>(c: &C, sample: &[C::Elem], indices: &[IndexId]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let d = c.datum();
    for b in sample {
        let wt = c.wt(b);
        for &i in indices {
            report.checked += 1;
            let mut fail = |axiom| {
                report.violations.push(AxiomViolation {
                    axiom,
                    i,
                    elem: format!("{b:?}"),
                })
            };
            let real = d.is_real(i);
            let aii = d.a(i, i);
            let (eps, phi) = (c.eps(b, i), c.phi(b, i));
            let h = pairing(d, i, &wt).expect("datum index");
            if phi != &eps + &h {
                fail(Axiom::PhiEpsWeight);
            }
            let e = c.e_tilde(b, i);
            let f = c.f_tilde(b, i);
            if phi.is_neg_inf() && (e.is_some() || f.is_some()) {
                fail(Axiom::NegInfNull);
            }
            if let Some(y) = &e {
                if c.wt(y) != &wt + &Weight::root(i, 1) {
                    fail(Axiom::RaiseWeight);
                }
                if c.f_tilde(y, i).as_ref() != Some(b) {
                    fail(Axiom::Inverse);
                }
                let (de, dp) = if real {
                    (-BigInt::one(), BigInt::one())
                } else {
                    (BigInt::zero(), aii.clone())
                };
                if c.eps(y, i) != &eps + &de || c.phi(y, i) != &phi + &dp {
                    fail(Axiom::RaiseShift);
                }
            }
            if let Some(y) = &f {
                if c.wt(y) != &wt + &Weight::root(i, -1) {
                    fail(Axiom::LowerWeight);
                }
                if c.e_tilde(y, i).as_ref() != Some(b) {
                    fail(Axiom::Inverse);
                }
                let (de, dp) = if real {
                    (BigInt::one(), -BigInt::one())
                } else {
                    (BigInt::zero(), -aii.clone())
                };
                if c.eps(y, i) != &eps + &de || c.phi(y, i) != &phi + &dp {
                    fail(Axiom::LowerShift);
                }
            }
        }
    }
    report
}
