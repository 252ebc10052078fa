use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::form::LinearForm;
use super::theta::{
    check_positivity, generate_theta, generate_theta_excluding, s_j_coordinate, ThetaLimits,
    ThetaSet,
};
use crate::datum::IndexId;
use crate::error::{Error, Result};
use crate::zinfty::{PathVector, SequenceCrystal};

/// The first failed condition of a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Clause {
    /// Some form in `Θ` is negative on `x`.
    ThetaNonnegative { form: String },
    /// `Σ_{t⁻<j<t} ⟨h_{i_t}, α_{i_j}⟩ x_j` is not negative.
    ImaginarySum { t: usize },
    /// The imaginary summands vanish and no real `p` gives strict positivity.
    RealFallback { t: usize },
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::ThetaNonnegative { form } => {
                write!(f, "theta nonnegativity: {form} < 0")
            }
            Clause::ImaginarySum { t } => {
                write!(f, "imaginary sum at t = {t}: sum over (t-, t) is not negative")
            }
            Clause::RealFallback { t } => write!(
                f,
                "real fallback at t = {t}: no real p in (t-, t) with strict positivity"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    In,
    Out(Clause),
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::In)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::In => write!(f, "in"),
            Verdict::Out(c) => write!(f, "out ({c})"),
            Verdict::Unknown { reason } => write!(f, "unknown ({reason})"),
        }
    }
}

/// Forms packed for fast evaluation on vectors supported in the window.
#[derive(Clone, Debug, Default)]
struct Packed {
    width: usize,
    rows: Vec<i64>,
    /// Forms whose coefficients do not fit in `i64`.
    big: Vec<LinearForm>,
    originals: Vec<LinearForm>,
}

impl Packed {
    fn new<'a>(width: usize, forms: impl IntoIterator<Item = &'a LinearForm>) -> Self {
        let mut p = Packed {
            width,
            ..Packed::default()
        };
        for f in forms {
            match f.dense_i64(width) {
                Some(row) => {
                    p.rows.extend(row);
                    p.originals.push(f.clone());
                }
                None => p.big.push(f.clone()),
            }
        }
        p
    }

    fn len(&self) -> usize {
        self.originals.len() + self.big.len()
    }

    /// First form with `ψ(x) < 0` (or `<= 0` when `strict`).
    fn first_failing(&self, dense: &[i128], x: &PathVector, strict: bool) -> Option<&LinearForm> {
        let bad = |v: &BigInt| if strict { !v.is_positive() } else { v.is_negative() };
        for (n, row) in self.rows.chunks_exact(self.width.max(1)).enumerate() {
            let v: i128 = row.iter().zip(dense).map(|(c, x)| *c as i128 * x).sum();
            if bad(&BigInt::from(v)) {
                return Some(&self.originals[n]);
            }
        }
        self.big.iter().find(|f| bad(&f.eval(x)))
    }
}

/// Evaluates membership in `Γ_ι` against windows of `Θ` and `Θ^{p\t}`
/// computed once at construction.
///
/// Clauses are checked cheapest first: the imaginary sums, then the real
/// fallback, then nonnegativity on `Θ`.
#[derive(Debug)]
pub struct GammaTester {
    z: SequenceCrystal,
    limits: ThetaLimits,
    theta: ThetaSet,
    /// Forms of `Θ` with a negative coefficient, short ones first.
    negative: Packed,
    excluding: BTreeMap<(usize, usize), (ThetaSet, Packed)>,
}

/// Metadata on how complete the underlying form sets are.
#[derive(Clone, Debug, Serialize)]
pub struct TesterStats {
    pub window: usize,
    pub theta_forms: usize,
    pub theta_negative_forms: usize,
    pub theta_saturated: bool,
    pub cap_hit: bool,
    pub escaped: usize,
    pub oversized: usize,
    pub excluded_sets: usize,
    pub excluded_forms: usize,
    pub excluded_saturated: bool,
}

impl GammaTester {
    /// Errors when the positivity assumption fails inside the window.
    pub fn new(z: &SequenceCrystal, limits: ThetaLimits) -> Result<Self> {
        let theta = generate_theta(z, &limits);
        let violations = check_positivity(z, &theta);
        if !violations.is_empty() {
            return Err(Error::Positivity(violations.len()));
        }
        let mut neg: Vec<&LinearForm> = theta.forms().filter(|f| f.has_negative()).collect();
        neg.sort_by_key(|f| (f.terms().len(), f.max_position(), f.max_abs_coeff()));
        let negative = Packed::new(limits.window, neg);

        let iota = z.iota();
        let mut pairs = Vec::new();
        for t in 1..=limits.window {
            if z.is_real_pos(t) {
                continue;
            }
            let tm = iota.kminus(t);
            if tm == 0 {
                continue;
            }
            pairs.extend((tm + 1..t).filter(|&p| z.is_real_pos(p)).map(|p| (p, t)));
        }
        let excluding = pairs
            .into_par_iter()
            .map(|(p, t)| {
                let th = generate_theta_excluding(z, p, t, &limits);
                let packed = Packed::new(limits.window, th.forms());
                ((p, t), (th, packed))
            })
            .collect();
        Ok(GammaTester {
            z: z.clone(),
            limits,
            theta,
            negative,
            excluding,
        })
    }

    pub fn theta(&self) -> &ThetaSet {
        &self.theta
    }

    pub fn excluding(&self, p: usize, t: usize) -> Option<&ThetaSet> {
        self.excluding.get(&(p, t)).map(|(th, _)| th)
    }

    pub fn stats(&self) -> TesterStats {
        TesterStats {
            window: self.limits.window,
            theta_forms: self.theta.len(),
            theta_negative_forms: self.negative.len(),
            theta_saturated: self.theta.saturated(),
            cap_hit: self.theta.cap_hit || self.excluding.values().any(|(t, _)| t.cap_hit),
            escaped: self.theta.escaped,
            oversized: self.theta.oversized
                + self.excluding.values().map(|(t, _)| t.oversized).sum::<usize>(),
            excluded_sets: self.excluding.len(),
            excluded_forms: self.excluding.values().map(|(t, _)| t.len()).sum(),
            excluded_saturated: self.excluding.values().all(|(t, _)| t.saturated()),
        }
    }

    pub fn verdict(&self, x: &PathVector) -> Verdict {
        let n = self.limits.window;
        if x.max_position().is_some_and(|m| m > n) {
            return Verdict::Unknown {
                reason: format!("support beyond window {n}"),
            };
        }
        let dense: Vec<i128> = (1..=n).map(|k| x.get(k) as i128).collect();
        let iota = self.z.iota();
        for (t, _) in x.iter() {
            if self.z.is_real_pos(t) {
                continue;
            }
            let tm = iota.kminus(t);
            if tm == 0 {
                continue;
            }
            let it = iota.index_at(t);
            let (total, imaginary_zero) = imaginary_sum(&self.z, x, t, tm);
            if !total.is_negative() {
                return Verdict::Out(Clause::ImaginarySum { t });
            }
            if imaginary_zero {
                let found = (tm + 1..t).any(|p| {
                    self.z.is_real_pos(p)
                        && (self.z.datum().a(it, iota.index_at(p)) * BigInt::from(x.get(p)))
                            .is_negative()
                        && self.excluding.get(&(p, t)).is_some_and(|(_, packed)| {
                            packed.first_failing(&dense, x, true).is_none()
                        })
                });
                if !found {
                    return Verdict::Out(Clause::RealFallback { t });
                }
            }
        }
        if let Some(f) = self.negative.first_failing(&dense, x, false) {
            return Verdict::Out(Clause::ThetaNonnegative {
                form: f.to_string(),
            });
        }
        if self.theta.cap_hit || self.excluding.values().any(|(t, _)| t.cap_hit) {
            return Verdict::Unknown {
                reason: format!("form cap {} reached", self.limits.max_forms),
            };
        }
        Verdict::In
    }
}

/// One-shot general membership; builds the form sets on every call.
pub fn gamma_member_general(
    z: &SequenceCrystal,
    x: &PathVector,
    limits: ThetaLimits,
) -> Result<Verdict> {
    Ok(GammaTester::new(z, limits)?.verdict(x))
}

fn imaginary_sum(z: &SequenceCrystal, x: &PathVector, t: usize, tm: usize) -> (BigInt, bool) {
    let it = z.iota().index_at(t);
    let mut total = BigInt::zero();
    let mut imaginary_zero = true;
    for (j, v) in x.range(tm + 1, t - 1) {
        let term = z.datum().a(it, z.iota().index_at(j)) * BigInt::from(v);
        if !z.is_real_pos(j) && !term.is_zero() {
            imaginary_zero = false;
        }
        total += term;
    }
    (total, imaginary_zero)
}

/// Membership when every index is imaginary: only the imaginary sums matter.
pub fn gamma_member_all_imaginary(z: &SequenceCrystal, x: &PathVector) -> Result<bool> {
    if z.datum().real_count() != 0 {
        return Err(Error::Misuse("datum has a real index".into()));
    }
    Ok(x.iter().all(|(t, _)| {
        let tm = z.iota().kminus(t);
        tm == 0 || imaginary_sum(z, x, t, tm).0.is_negative()
    }))
}

/// Membership with exactly one real index, via `S_j x_j` on real positions.
pub fn gamma_member_single_real(z: &SequenceCrystal, x: &PathVector) -> Result<bool> {
    if z.datum().real_count() != 1 {
        return Err(Error::Misuse(format!(
            "expected one real index, found {}",
            z.datum().real_count()
        )));
    }
    let real = real_index(z).ok_or_else(|| Error::Misuse("real index not in sequence".into()))?;
    let top = x.max_position().unwrap_or(0);
    let sj = |j: usize| s_j_coordinate(z, j).eval(x);
    for j in z.iota().positions_of(real) {
        if j >= top {
            break;
        }
        if sj(j).is_negative() {
            return Ok(false);
        }
    }
    for (t, _) in x.iter() {
        if z.is_real_pos(t) {
            continue;
        }
        let tm = z.iota().kminus(t);
        if tm == 0 {
            continue;
        }
        let (total, imaginary_zero) = imaginary_sum(z, x, t, tm);
        if !total.is_negative() {
            return Ok(false);
        }
        if imaginary_zero {
            let it = z.iota().index_at(t);
            let ok = (tm + 1..t).any(|p| {
                z.is_real_pos(p)
                    && (z.datum().a(it, z.iota().index_at(p)) * BigInt::from(x.get(p))).is_negative()
                    && sj(p).is_positive()
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn real_index(z: &SequenceCrystal) -> Option<IndexId> {
    match z.datum().explicit_indices() {
        Some(ids) => ids.iter().copied().find(|i| z.datum().is_real(*i)),
        None => Some(IndexId::copy(-1, 1)),
    }
}
