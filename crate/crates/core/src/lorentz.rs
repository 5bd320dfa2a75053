//! Weighted Lorentz sequence quasi-norms and their dyadic variants.
//!
//! For a weight η and 0 < q < ∞,
//! ‖s‖ = (Σₙ (η(n)·s*ₙ)^q / n)^(1/q) with s* the non-increasing
//! rearrangement; for q = ∞, ‖s‖ = supₙ η(n)·s*ₙ. The dyadic variant keeps
//! only indices κ^j. All sums terminate at |supp| since s* vanishes beyond.

use crate::greedy::rearrangement;
use crate::spaces::SparseVector;
use crate::weights::Weight;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("eta table has {have} entries but |supp(f)| = {need}; supply a longer table")]
    TableTooShort { have: usize, need: usize },
}

/// Parameters of a weighted Lorentz quasi-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorentzParams {
    pub eta: Weight,
    /// q ∈ (0, ∞]; ∞ encoded as `f64::INFINITY`.
    pub q: f64,
    /// Dyadic base κ ≥ 2.
    #[serde(default = "default_kappa")]
    pub kappa: u64,
}

fn default_kappa() -> u64 {
    2
}

impl LorentzParams {
    pub fn new(eta: Weight, q: f64) -> Self {
        assert!(q > 0.0);
        Self { eta, q, kappa: 2 }
    }

    pub fn with_kappa(mut self, kappa: u64) -> Self {
        assert!(kappa >= 2);
        self.kappa = kappa;
        self
    }
}

/// Aggregate (Σ termₙ^q · cₙ)^(1/q) with terms scaled by their max so large
/// q neither overflows nor underflows; q = ∞ is the plain sup.
pub(crate) fn q_aggregate(terms: &[(f64, f64)], q: f64) -> f64 {
    if q.is_infinite() {
        return terms.iter().fold(0.0f64, |acc, &(t, _)| acc.max(t));
    }
    let m = terms.iter().fold(0.0f64, |acc, &(t, _)| acc.max(t));
    if m == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &(t, c) in terms {
        let term = (t / m).powf(q) * c;
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    m * sum.powf(1.0 / q)
}

fn norm_of_rearrangement(s_star: &[f64], eta: impl Fn(u64) -> f64, q: f64) -> f64 {
    let terms: Vec<(f64, f64)> = s_star
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let n = (i + 1) as u64;
            (eta(n) * s, 1.0 / n as f64)
        })
        .collect();
    q_aggregate(&terms, q)
}

/// ‖f‖_{ℓ^q_η} on basis coefficients.
pub fn lorentz_norm(f: &SparseVector, params: &LorentzParams) -> f64 {
    let s_star = rearrangement(f, f.support_len());
    norm_of_rearrangement(&s_star, |n| params.eta.eval(n), params.q)
}

/// Dyadic variant (Σ_j (η(κ^j)·s*_{κ^j})^q)^(1/q); q = ∞ falls back to the
/// sup over dyadic indices.
pub fn dyadic_lorentz_norm(f: &SparseVector, params: &LorentzParams) -> f64 {
    let len = f.support_len() as u64;
    if len == 0 {
        return 0.0;
    }
    let s_star = rearrangement(f, len as usize);
    let mut terms = Vec::new();
    let mut idx: u64 = 1;
    loop {
        let t = params.eta.eval(idx) * s_star[(idx - 1) as usize];
        terms.push((t, 1.0));
        match idx.checked_mul(params.kappa) {
            Some(next) if next <= len => idx = next,
            _ => break,
        }
    }
    q_aggregate(&terms, params.q)
}

/// ‖f‖ with the pointwise-product weight n ↦ w(n)·η(n), where η is given as
/// a 1-indexed table (typically a democracy function).
pub fn product_weight_lorentz(
    f: &SparseVector,
    w: &Weight,
    eta_vals: &[f64],
    q: f64,
) -> Result<f64, LorentzError> {
    let need = f.support_len();
    if eta_vals.len() < need {
        return Err(LorentzError::TableTooShort {
            have: eta_vals.len(),
            need,
        });
    }
    let s_star = rearrangement(f, need);
    Ok(norm_of_rearrangement(
        &s_star,
        |n| w.eval(n) * eta_vals[(n - 1) as usize],
        q,
    ))
}
