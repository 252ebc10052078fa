use std::collections::VecDeque;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::form::LinearForm;
use crate::zinfty::SequenceCrystal;

/// `β_k`; `β_0 = 0`.
pub fn beta_form(z: &SequenceCrystal, k: usize) -> LinearForm {
    if k == 0 {
        return LinearForm::zero();
    }
    let iota = z.iota();
    let i = iota.index_at(k);
    let kp = iota.kplus(k);
    let inner = (k + 1..kp).map(|j| (j, z.datum().a(i, iota.index_at(j))));
    if z.is_real_pos(k) {
        LinearForm::from_terms(
            std::iter::once((k, BigInt::from(1)))
                .chain(inner)
                .chain(std::iter::once((kp, BigInt::from(1)))),
        )
    } else {
        LinearForm::from_terms(inner.chain(std::iter::once((kp, z.datum().a(i, i)))))
    }
}

/// The expression `x_k + Σ_{k<j<k⁺} ⟨h_{i_k}, α_{i_j}⟩ x_j − x_{k⁺}` used by
/// `S_k` on a positive coefficient at an imaginary position.
fn imaginary_step(z: &SequenceCrystal, k: usize) -> LinearForm {
    let iota = z.iota();
    let i = iota.index_at(k);
    let kp = iota.kplus(k);
    LinearForm::from_terms(
        std::iter::once((k, BigInt::from(1)))
            .chain((k + 1..kp).map(|j| (j, z.datum().a(i, iota.index_at(j)))))
            .chain(std::iter::once((kp, BigInt::from(-1)))),
    )
}

/// The piecewise-linear operator `S_k`.
pub fn s_k(z: &SequenceCrystal, psi: &LinearForm, k: usize) -> LinearForm {
    let Some(c) = psi.coeff_ref(k) else {
        return psi.clone();
    };
    let step = if c.is_positive() {
        if z.is_real_pos(k) {
            beta_form(z, k)
        } else {
            imaginary_step(z, k)
        }
    } else {
        beta_form(z, z.iota().kminus(k))
    };
    psi.add_scaled(&step, &-c)
}

/// Bounds for the closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaLimits {
    /// Positions `1..=window`; forms reaching outside are dropped.
    pub window: usize,
    /// Stop once this many forms are kept.
    pub max_forms: usize,
    /// Drop forms with a coefficient larger than this in absolute value.
    pub max_coeff: Option<BigInt>,
}

impl ThetaLimits {
    pub fn new(window: usize) -> Self {
        ThetaLimits {
            window,
            max_forms: 2_000_000,
            max_coeff: None,
        }
    }

    pub fn with_max_forms(mut self, cap: usize) -> Self {
        self.max_forms = cap;
        self
    }

    pub fn with_max_coeff(mut self, bound: Option<i64>) -> Self {
        self.max_coeff = bound.map(BigInt::from);
        self
    }
}

/// A window of `Θ` (or of `Θ^{s\t}`).
#[derive(Clone, Debug)]
pub struct ThetaSet {
    forms: IndexSet<LinearForm>,
    pub window: usize,
    /// The worklist emptied before `max_forms` was reached.
    pub fixpoint: bool,
    pub cap_hit: bool,
    /// Forms dropped because their support left the window.
    pub escaped: usize,
    /// Forms dropped by the coefficient bound.
    pub oversized: usize,
}

impl ThetaSet {
    /// Fixpoint of the unbounded closure inside the window.
    pub fn saturated(&self) -> bool {
        self.fixpoint && self.oversized == 0
    }

    pub fn forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.forms.iter()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn contains(&self, f: &LinearForm) -> bool {
        self.forms.contains(f)
    }

    /// Forms ordered by support, then coefficients.
    pub fn sorted(&self) -> Vec<&LinearForm> {
        let mut v: Vec<_> = self.forms.iter().collect();
        v.sort_by(|a, b| {
            (a.min_position(), a.max_position(), a.terms().len())
                .cmp(&(b.min_position(), b.max_position(), b.terms().len()))
                .then_with(|| a.cmp(b))
        });
        v
    }

    #[doc(hidden)]
    pub fn insert_unchecked(&mut self, f: LinearForm) {
        self.forms.insert(f);
    }
}

fn closure(
    z: &SequenceCrystal,
    seeds: impl IntoIterator<Item = usize>,
    excluded: Option<usize>,
    limits: &ThetaLimits,
) -> ThetaSet {
    let n = limits.window;
    let mut set = ThetaSet {
        forms: IndexSet::new(),
        window: n,
        fixpoint: false,
        cap_hit: false,
        escaped: 0,
        oversized: 0,
    };
    let mut queue = VecDeque::new();
    for s in seeds {
        let f = LinearForm::coordinate(s);
        if set.forms.insert(f.clone()) {
            queue.push_back(f);
        }
    }
    while let Some(psi) = queue.pop_front() {
        let positions: Vec<usize> = psi.terms().iter().map(|(k, _)| *k).collect();
        for k in positions {
            if Some(k) == excluded {
                continue;
            }
            // A positive coefficient pulls in x_{k⁺}, which is new when k⁺ > n.
            if psi.coeff_ref(k).is_some_and(|c| c.is_positive()) && z.iota().kplus(k) > n {
                set.escaped += 1;
                continue;
            }
            let next = s_k(z, &psi, k);
            if next.is_zero() || set.forms.contains(&next) {
                continue;
            }
            if next.max_position().is_some_and(|m| m > n) {
                set.escaped += 1;
                continue;
            }
            if let Some(bound) = &limits.max_coeff {
                if next.max_abs_coeff() > *bound {
                    set.oversized += 1;
                    continue;
                }
            }
            if set.forms.len() >= limits.max_forms {
                set.cap_hit = true;
                return set;
            }
            set.forms.insert(next.clone());
            queue.push_back(next);
        }
    }
    set.fixpoint = true;
    set
}

/// Closure of the coordinate forms `x_1, …, x_N` under `S_1, …, S_N`.
pub fn generate_theta(z: &SequenceCrystal, limits: &ThetaLimits) -> ThetaSet {
    closure(z, 1..=limits.window, None, limits)
}

/// Closure of `x_s` under every `S_k` with `k != t`.
pub fn generate_theta_excluding(
    z: &SequenceCrystal,
    s: usize,
    t: usize,
    limits: &ThetaLimits,
) -> ThetaSet {
    closure(z, [s], Some(t), limits)
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityViolation {
    pub form: String,
    pub position: usize,
    pub coeff: String,
}

/// Forms with a negative coefficient at a first-occurrence position.
pub fn check_positivity(z: &SequenceCrystal, th: &ThetaSet) -> Vec<PositivityViolation> {
    let mut out = Vec::new();
    for f in th.sorted() {
        for (k, c) in f.terms() {
            if c.is_negative() && z.iota().kminus(*k) == 0 {
                out.push(PositivityViolation {
                    form: f.to_string(),
                    position: *k,
                    coeff: c.to_string(),
                });
            }
        }
    }
    out
}

/// `S_j x_j` for a real position `j`: `−Σ_{j<t<j⁺} ⟨h_{i_j}, α_{i_t}⟩ x_t − x_{j⁺}`.
pub fn s_j_coordinate(z: &SequenceCrystal, j: usize) -> LinearForm {
    s_k(z, &LinearForm::coordinate(j), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monster::MonsterConfig;
    use crate::presets;

    fn form(terms: &[(usize, i64)]) -> LinearForm {
        LinearForm::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn beta_on_rank2() {
        let (a, b, c) = (4, 2, 3);
        let z = presets::rank2(a, b, c).unwrap();
        assert!(beta_form(&z, 0).is_zero());
        assert_eq!(beta_form(&z, 2), form(&[(2, 1), (3, -c), (4, 1)]));
        assert_eq!(beta_form(&z, 1), form(&[(2, -b), (3, -a)]));
        assert_eq!(s_j_coordinate(&z, 2), form(&[(3, c), (4, -1)]));
        assert_eq!(s_k(&z, &form(&[(1, 1)]), 1), form(&[(2, b), (3, 1)]));
        assert_eq!(s_k(&z, &form(&[(2, 5)]), 1), form(&[(2, 5)]));
    }

    #[test]
    fn monster_first_step() {
        let z = presets::monster(MonsterConfig::toy());
        assert_eq!(s_j_coordinate(&z, 1), form(&[(4, -1)]));
    }

    #[test]
    fn trivial_rank2_closure() {
        let z = presets::rank2(0, 0, 0).unwrap();
        let th = generate_theta(&z, &ThetaLimits::new(6));
        let mut expected: Vec<LinearForm> = (1..=6).map(LinearForm::coordinate).collect();
        expected.push(form(&[(4, -1)]));
        expected.push(form(&[(6, -1)]));
        expected.sort();
        let mut got: Vec<LinearForm> = th.forms().cloned().collect();
        got.sort();
        assert_eq!(got, expected);
        assert!(th.saturated());
        assert!(check_positivity(&z, &th).is_empty());
    }

    #[test]
    fn excluded_closure_is_a_subset() {
        let z = presets::rank2(2, 1, 1).unwrap();
        let limits = ThetaLimits::new(10);
        let th = generate_theta(&z, &limits);
        for (s, t) in [(2, 3), (4, 5), (2, 7)] {
            let ex = generate_theta_excluding(&z, s, t, &limits);
            assert!(ex.contains(&LinearForm::coordinate(s)));
            assert!(ex.forms().all(|f| th.contains(f)));
        }
    }

    #[test]
    fn positivity_negative_control() {
        let z = presets::rank2(2, 1, 1).unwrap();
        let mut th = generate_theta(&z, &ThetaLimits::new(8));
        assert!(check_positivity(&z, &th).is_empty());
        th.insert_unchecked(form(&[(2, -1), (3, 1)]));
        let v = check_positivity(&z, &th);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].position, 2);
    }

    #[test]
    fn limits_are_reported() {
        let z = presets::rank2(4, 2, 3).unwrap();
        let capped = generate_theta(&z, &ThetaLimits::new(12).with_max_forms(50));
        assert!(capped.cap_hit && !capped.saturated());
        assert_eq!(capped.len(), 50);
        let bounded = generate_theta(&z, &ThetaLimits::new(12).with_max_coeff(Some(3)));
        assert!(bounded.fixpoint && bounded.oversized > 0 && !bounded.saturated());
        assert!(bounded.forms().all(|f| f.max_abs_coeff() <= BigInt::from(3)));
    }
}
