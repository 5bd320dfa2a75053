//! The four approximation-error functionals with certificates.
//!
//! For f with finite support and n ≥ 0:
//!
//! - σₙ(f): best n-term error, inf over all g with |supp(g)| ≤ n of ‖f − g‖;
//! - σ̃ₙ(f): best projection error, inf over |A| ≤ n of ‖f − P_A(f)‖;
//! - γₙ(f): greedy error, sup over A ∈ GS(f, n) of ‖f − P_A(f)‖;
//! - ϑₙ(f): Chebyshev-greedy error, sup over A ∈ GS(f, n) of the best
//!   approximation from span{xₐ : a ∈ A}.
//!
//! Every value is pointwise certified: σₙ ≤ σ̃ₙ ≤ γₙ and σₙ ≤ ϑₙ ≤ γₙ, all
//! four vanish for n ≥ |supp(f)|, and σ, σ̃ are non-increasing.
//!
//! Exactness per family: the lp and lorentz_d norms are 1-unconditional and
//! rearrangement-invariant, so the optimal n-term approximant keeps the n
//! largest coefficients and equals a projection; interleaved_sum optimizes
//! the split between its two summands; summing_c0 enumerates supports and
//! solves the inner minimization exactly by tail blocks (see [`crate::solver`]).

use crate::greedy::{self, GreedySetFamily};
use crate::solver::{tail_block_min, tail_sums};
use crate::spaces::{SpaceDescriptor, SparseVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ApproxError {
    #[error("support enumeration needs {count} candidates (limit {limit}); reduce n or the window")]
    TooManyCandidates { count: u128, limit: u64 },
    #[error("chain invariant violated at n = {n}: {detail}")]
    ChainViolation { n: usize, detail: String },
}

/// Options shared by the error functionals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorOpts {
    /// Extra indices past max(supp) admitted into σ's support pool.
    pub window: u64,
    /// Cap on enumerated tie resolutions before sampling kicks in.
    pub tie_cap: usize,
    /// Seed for sampled tie resolutions.
    pub seed: u64,
    /// Budget for support enumeration and branch-and-bound nodes.
    pub max_candidates: u64,
}

impl Default for ErrorOpts {
    fn default() -> Self {
        Self {
            window: 4,
            tie_cap: 10_000,
            seed: 0,
            max_candidates: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueStatus {
    Exact,
    UpperBound,
    Sampled,
}

impl ValueStatus {
    pub fn worst(self, other: Self) -> Self {
        use ValueStatus::*;
        match (self, other) {
            (Exact, x) | (x, Exact) => x,
            (UpperBound, _) | (_, UpperBound) => UpperBound,
            _ => Sampled,
        }
    }
}

/// The input achieving (or bounding) an error value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Certificate {
    /// Support of the approximant (σ, ϑ) or the projection set (σ̃, γ).
    pub support: Vec<u64>,
    /// Approximant coefficients aligned with `support`.
    pub coefficients: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorValue {
    pub value: f64,
    pub status: ValueStatus,
    pub certificate: Certificate,
}

impl ErrorValue {
    fn exact(value: f64, certificate: Certificate) -> Self {
        Self {
            value,
            status: ValueStatus::Exact,
            certificate,
        }
    }
}

fn projection_certificate(f: &SparseVector, set: &[u64]) -> Certificate {
    Certificate {
        support: set.to_vec(),
        coefficients: set.iter().map(|&i| f.get(i)).collect(),
        note: None,
    }
}

/// σₙ(f): best n-term approximation error.
pub fn sigma(
    space: &SpaceDescriptor,
    f: &SparseVector,
    n: usize,
    opts: &ErrorOpts,
) -> Result<ErrorValue, ApproxError> {
    let support: Vec<u64> = f.support().collect();
    if n >= support.len() {
        return Ok(ErrorValue::exact(0.0, projection_certificate(f, &support)));
    }
    if n == 0 {
        return Ok(ErrorValue::exact(space.norm(f), Certificate::default()));
    }

    match space {
        SpaceDescriptor::Lp { .. } | SpaceDescriptor::LorentzD { .. } => {
            let keep = largest_indices(f, n);
            let residual = drop_indices(f, &keep);
            Ok(ErrorValue::exact(
                space.norm(&residual),
                projection_certificate(f, &keep),
            ))
        }
        SpaceDescriptor::InterleavedSum { .. } => {
            let (keep, value) = interleaved_best_split(space, f, n);
            Ok(ErrorValue {
                value,
                status: ValueStatus::Exact,
                certificate: projection_certificate(f, &keep),
            })
        }
        SpaceDescriptor::SummingC0 => summing_sigma(f, n, opts),
    }
}

/// Indices of the n largest |coefficients| (ties by lowest index).
fn largest_indices(f: &SparseVector, n: usize) -> Vec<u64> {
    let mut items: Vec<(u64, f64)> = f.iter().map(|(i, v)| (i, v.abs())).collect();
    items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut keep: Vec<u64> = items.into_iter().take(n).map(|(i, _)| i).collect();
    keep.sort_unstable();
    keep
}

fn drop_indices(f: &SparseVector, dropped: &[u64]) -> SparseVector {
    let mut g = f.clone();
    for &i in dropped {
        g.set(i, 0.0);
    }
    g
}

/// Best split for the interleaved sum: keep the j largest odd-indexed and
/// n−j largest even-indexed coefficients, minimizing the residual norm.
fn interleaved_best_split(
    space: &SpaceDescriptor,
    f: &SparseVector,
    n: usize,
) -> (Vec<u64>, f64) {
    let mut odds: Vec<(u64, f64)> = f.iter().filter(|(i, _)| i % 2 == 1).collect();
    let mut evens: Vec<(u64, f64)> = f.iter().filter(|(i, _)| i % 2 == 0).collect();
    odds.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
    evens.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());

    let mut best: Option<(Vec<u64>, f64)> = None;
    let j_lo = n.saturating_sub(evens.len());
    let j_hi = n.min(odds.len());
    for j in j_lo..=j_hi {
        let keep: Vec<u64> = odds[..j]
            .iter()
            .chain(evens[..n - j].iter())
            .map(|&(i, _)| i)
            .collect();
        let residual = drop_indices(f, &keep);
        let v = space.norm(&residual);
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            let mut keep = keep;
            keep.sort_unstable();
            best = Some((keep, v));
        }
    }
    best.expect("split range is nonempty")
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// σₙ on the summing basis: enumerate supports from supp(f) plus a window of
/// indices past max(supp), solving each inner problem exactly by tail blocks.
///
/// Cut points in index gaps or beyond max(supp) are weakly dominated by cuts
/// at support indices (moving a cut left to the nearest support index never
/// widens a block's tail range), so the windowed pool is already generous.
fn summing_sigma(f: &SparseVector, n: usize, opts: &ErrorOpts) -> Result<ErrorValue, ApproxError> {
    let max_supp = f.max_index().expect("nonempty by caller");
    let mut pool: Vec<u64> = f.support().collect();
    for extra in 1..=opts.window {
        pool.push(max_supp + extra);
    }
    pool.sort_unstable();
    let len = max_supp + opts.window;
    let coeffs: Vec<(u64, f64)> = f.iter().collect();
    let tails = tail_sums(&coeffs, len);

    let pick = n.min(pool.len());
    let count = binomial_u128(pool.len(), pick);
    if count > opts.max_candidates as u128 {
        return Err(ApproxError::TooManyCandidates {
            count,
            limit: opts.max_candidates,
        });
    }

    let mut best_value = f64::INFINITY;
    let mut best_cuts: Vec<u64> = Vec::new();
    let mut best_coeffs: Vec<f64> = Vec::new();
    for combo in greedy::Combinations::new(pool.len(), pick) {
        let cuts: Vec<u64> = combo.iter().map(|&i| pool[i]).collect();
        let sol = tail_block_min(&tails, &cuts);
        if sol.value < best_value {
            best_value = sol.value;
            best_cuts = cuts;
            best_coeffs = sol.coefficients;
        }
    }
    // Strip zero coefficients so the certificate support is honest.
    let (support, coefficients): (Vec<u64>, Vec<f64>) = best_cuts
        .iter()
        .zip(best_coeffs.iter())
        .filter(|(_, &c)| c != 0.0)
        .map(|(&b, &c)| (b, c))
        .unzip();
    Ok(ErrorValue::exact(
        best_value,
        Certificate {
            support,
            coefficients,
            note: None,
        },
    ))
}

/// σ̃ₙ(f): best approximation by coordinate projections.
pub fn sigma_tilde(
    space: &SpaceDescriptor,
    f: &SparseVector,
    n: usize,
    opts: &ErrorOpts,
) -> Result<ErrorValue, ApproxError> {
    let support: Vec<u64> = f.support().collect();
    if n >= support.len() {
        return Ok(ErrorValue::exact(0.0, projection_certificate(f, &support)));
    }
    if n == 0 {
        return Ok(ErrorValue::exact(space.norm(f), Certificate::default()));
    }
    if space.is_lattice() {
        // The best n-term approximant of a lattice norm is a projection,
        // so the infimum over projections coincides with σₙ.
        return sigma(space, f, n, opts);
    }
    summing_sigma_tilde(f, n, opts)
}

/// Branch-and-bound over drop sets for the summing basis: walk support
/// indices from the largest down, keeping or dropping each coefficient, and
/// prune on the running max of kept tail sums.
fn summing_sigma_tilde(
    f: &SparseVector,
    n: usize,
    opts: &ErrorOpts,
) -> Result<ErrorValue, ApproxError> {
    let coeffs: Vec<(u64, f64)> = f.iter().collect();
    let m = coeffs.len();

    // Greedy incumbent: drop the n largest magnitudes.
    let space = SpaceDescriptor::summing_c0();
    let drop0 = largest_indices(f, n);
    let mut best_value = space.norm(&drop_indices(f, &drop0));
    let mut best_drop: Vec<u64> = drop0;

    struct Frame {
        pos: usize,
        drops_left: usize,
        tail: f64,
        running_max: f64,
        dropped: Vec<u64>,
    }
    let mut nodes: u64 = 0;
    let mut capped = false;
    let mut stack = vec![Frame {
        pos: m,
        drops_left: n,
        tail: 0.0,
        running_max: 0.0,
        dropped: Vec::new(),
    }];
    while let Some(fr) = stack.pop() {
        nodes += 1;
        if nodes > opts.max_candidates {
            capped = true;
            break;
        }
        if fr.running_max >= best_value {
            continue;
        }
        if fr.pos == 0 {
            if fr.running_max < best_value {
                best_value = fr.running_max;
                best_drop = fr.dropped.clone();
            }
            continue;
        }
        let (idx, a) = coeffs[fr.pos - 1];
        // Keep branch.
        let tail = fr.tail + a;
        stack.push(Frame {
            pos: fr.pos - 1,
            drops_left: fr.drops_left,
            tail,
            running_max: fr.running_max.max(tail.abs()),
            dropped: fr.dropped.clone(),
        });
        // Drop branch.
        if fr.drops_left > 0 {
            let mut dropped = fr.dropped;
            dropped.push(idx);
            stack.push(Frame {
                pos: fr.pos - 1,
                drops_left: fr.drops_left - 1,
                tail: fr.tail,
                running_max: fr.running_max,
                dropped,
            });
        }
    }

    best_drop.sort_unstable();
    Ok(ErrorValue {
        value: best_value,
        status: if capped {
            ValueStatus::UpperBound
        } else {
            ValueStatus::Exact
        },
        certificate: Certificate {
            support: best_drop.clone(),
            coefficients: best_drop.iter().map(|&i| f.get(i)).collect(),
            note: capped.then(|| "branch-and-bound node cap reached".into()),
        },
    })
}

fn greedy_family(f: &SparseVector, n: usize, opts: &ErrorOpts) -> GreedySetFamily {
    greedy::greedy_sets_or_sample(f, n, opts.tie_cap, opts.seed)
}

/// γₙ(f): sup over greedy sets of the projection residual norm.
pub fn gamma(
    space: &SpaceDescriptor,
    f: &SparseVector,
    n: usize,
    opts: &ErrorOpts,
) -> ErrorValue {
    let support_len = f.support_len();
    if n >= support_len {
        let support: Vec<u64> = f.support().collect();
        return ErrorValue::exact(0.0, projection_certificate(f, &support));
    }
    if n == 0 {
        return ErrorValue::exact(space.norm(f), Certificate::default());
    }
    let family = greedy_family(f, n, opts);
    let mut best = f64::NEG_INFINITY;
    let mut best_set: &[u64] = &[];
    for set in &family.sets {
        let v = space.norm(&drop_indices(f, set));
        if v > best {
            best = v;
            best_set = set;
        }
    }
    ErrorValue {
        value: best,
        status: if family.sampled {
            ValueStatus::Sampled
        } else {
            ValueStatus::Exact
        },
        certificate: projection_certificate(f, best_set),
    }
}

/// ϑₙ(f): sup over greedy sets of the best approximation from the span.
///
/// For the lattice families the inner optimum is the projection, so ϑₙ = γₙ;
/// on the summing basis the inner problem is solved exactly by tail blocks.
pub fn theta(
    space: &SpaceDescriptor,
    f: &SparseVector,
    n: usize,
    opts: &ErrorOpts,
) -> ErrorValue {
    let support_len = f.support_len();
    if n >= support_len {
        let support: Vec<u64> = f.support().collect();
        return ErrorValue::exact(0.0, projection_certificate(f, &support));
    }
    if n == 0 {
        return ErrorValue::exact(space.norm(f), Certificate::default());
    }
    if space.is_lattice() {
        return gamma(space, f, n, opts);
    }

    let max_supp = f.max_index().expect("nonempty");
    let coeffs: Vec<(u64, f64)> = f.iter().collect();
    let tails = tail_sums(&coeffs, max_supp);
    let family = greedy_family(f, n, opts);
    let mut best = f64::NEG_INFINITY;
    let mut best_cert = Certificate::default();
    for set in &family.sets {
        // Greedy sets may extend past max(supp) only when n ≥ |supp|,
        // handled above; here all indices are within range.
        let sol = tail_block_min(&tails, set);
        if sol.value > best {
            best = sol.value;
            best_cert = Certificate {
                support: set.clone(),
                coefficients: sol.coefficients,
                note: None,
            };
        }
    }
    ErrorValue {
        value: best,
        status: if family.sampled {
            ValueStatus::Sampled
        } else {
            ValueStatus::Exact
        },
        certificate: best_cert,
    }
}

/// The four error sequences for n = 0..=N with per-entry certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorProfile {
    pub max_order: usize,
    pub support_len: usize,
    /// ‖f‖ in the profiled space.
    pub norm: f64,
    pub sigma: Vec<ErrorValue>,
    pub sigma_tilde: Vec<ErrorValue>,
    pub gamma: Vec<ErrorValue>,
    pub theta: Vec<ErrorValue>,
}

impl ErrorProfile {
    pub fn worst_status(&self) -> ValueStatus {
        let mut acc = ValueStatus::Exact;
        for seq in [&self.sigma, &self.sigma_tilde, &self.gamma, &self.theta] {
            for e in seq.iter() {
                acc = acc.worst(e.status);
            }
        }
        acc
    }
}

/// Compute all four sequences and enforce the chain invariants
/// σₙ ≤ σ̃ₙ ≤ γₙ, σₙ ≤ ϑₙ ≤ γₙ before returning.
pub fn error_profile(
    space: &SpaceDescriptor,
    f: &SparseVector,
    max_order: usize,
    opts: &ErrorOpts,
) -> Result<ErrorProfile, ApproxError> {
    let mut profile = ErrorProfile {
        max_order,
        support_len: f.support_len(),
        norm: space.norm(f),
        sigma: Vec::with_capacity(max_order + 1),
        sigma_tilde: Vec::with_capacity(max_order + 1),
        gamma: Vec::with_capacity(max_order + 1),
        theta: Vec::with_capacity(max_order + 1),
    };
    for n in 0..=max_order {
        profile.sigma.push(sigma(space, f, n, opts)?);
        profile.sigma_tilde.push(sigma_tilde(space, f, n, opts)?);
        profile.gamma.push(gamma(space, f, n, opts));
        profile.theta.push(theta(space, f, n, opts));
    }
    check_chain(&profile)?;
    Ok(profile)
}

fn check_chain(p: &ErrorProfile) -> Result<(), ApproxError> {
    let tol = |x: f64| 1e-9 * (1.0 + x.abs());
    for n in 0..=p.max_order {
        let (s, st, g, th) = (
            p.sigma[n].value,
            p.sigma_tilde[n].value,
            p.gamma[n].value,
            p.theta[n].value,
        );
        let checks = [
            (s <= st + tol(st), format!("sigma {s} > sigma_tilde {st}")),
            (st <= g + tol(g), format!("sigma_tilde {st} > gamma {g}")),
            (s <= th + tol(th), format!("sigma {s} > theta {th}")),
            (th <= g + tol(g), format!("theta {th} > gamma {g}")),
        ];
        for (ok, detail) in checks {
            if !ok {
                return Err(ApproxError::ChainViolation { n, detail });
            }
        }
        if n > 0 {
            if p.sigma[n].value > p.sigma[n - 1].value + tol(p.sigma[n - 1].value) {
                return Err(ApproxError::ChainViolation {
                    n,
                    detail: "sigma not non-increasing".into(),
                });
            }
            if p.sigma_tilde[n].value > p.sigma_tilde[n - 1].value + tol(p.sigma_tilde[n - 1].value)
            {
                return Err(ApproxError::ChainViolation {
                    n,
                    detail: "sigma_tilde not non-increasing".into(),
                });
            }
        }
        if n >= p.support_len {
            for (name, v) in [("sigma", s), ("sigma_tilde", st), ("gamma", g), ("theta", th)] {
                if v != 0.0 {
                    return Err(ApproxError::ChainViolation {
                        n,
                        detail: format!("{name} = {v} beyond the support"),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn v(pairs: &[(u64, f64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn opts() -> ErrorOpts {
        ErrorOpts::default()
    }

    #[test]
    fn sigma_lp2_keeps_largest() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        let f = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        let e = sigma(&s, &f, 1, &opts()).unwrap();
        assert!((e.value - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.certificate.support, vec![1]);
        // n = 0 → ‖f‖; n = |supp| → 0
        assert!((sigma(&s, &f, 0, &opts()).unwrap().value - 14f64.sqrt()).abs() < 1e-12);
        assert_eq!(sigma(&s, &f, 3, &opts()).unwrap().value, 0.0);
    }

    #[test]
    fn sigma_summing_alternating_pair() {
        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 1.0), (2, -1.0)]);
        // Best single support is {2} with c = -1/2: residual tails (±1/2).
        let e = sigma(&s, &f, 1, &opts()).unwrap();
        assert!((e.value - 0.5).abs() < 1e-12);
        assert_eq!(e.status, ValueStatus::Exact);
    }

    #[test]
    fn sigma_tilde_examples() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        let f = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        let e = sigma_tilde(&s, &f, 1, &opts()).unwrap();
        assert!((e.value - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.certificate.support, vec![1]);

        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 1.0), (2, -1.0)]);
        let e = sigma_tilde(&s, &f, 1, &opts()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);

        assert_eq!(sigma_tilde(&s, &f, 5, &opts()).unwrap().value, 0.0);
    }

    #[test]
    fn gamma_examples() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        let f = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        let e = gamma(&s, &f, 1, &opts());
        assert!((e.value - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.certificate.support, vec![1]);

        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 1.0), (2, -1.0)]);
        // tie sets {1}, {2}: residual norms 1 and 1
        let e = gamma(&s, &f, 1, &opts());
        assert!((e.value - 1.0).abs() < 1e-12);

        assert!((gamma(&s, &f, 0, &opts()).value - s.norm(&f)).abs() < 1e-12);
    }

    #[test]
    fn theta_pinned_summing_example() {
        // GS(f,1) = {{1},{2}}; inner infima are 1.0 (A={1}: tails (-c,-1),
        // best c = 0) and 0.5 (A={2}: best c = -1/2). The sup is 1.0,
        // pinned by the 1-D grid oracle in the verify tests.
        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 1.0), (2, -1.0)]);
        let e = theta(&s, &f, 1, &opts());
        assert!((e.value - 1.0).abs() < 1e-12);
        assert_eq!(theta(&s, &f, 2, &opts()).value, 0.0);
    }

    #[test]
    fn theta_equals_gamma_on_lattice_families() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        let f = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        let e = theta(&s, &f, 1, &opts());
        assert!((e.value - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn profile_lp2_example() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        let f = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        let p = error_profile(&s, &f, 3, &opts()).unwrap();
        let expect = [14f64.sqrt(), 5f64.sqrt(), 1.0, 0.0];
        for n in 0..=3 {
            assert!((p.sigma[n].value - expect[n]).abs() < 1e-12);
            assert!((p.sigma_tilde[n].value - expect[n]).abs() < 1e-12);
            assert!((p.gamma[n].value - expect[n]).abs() < 1e-12);
            assert!((p.theta[n].value - expect[n]).abs() < 1e-12);
        }
    }

    #[test]
    fn profile_empty_vector() {
        let s = SpaceDescriptor::lp(1.0).unwrap();
        let p = error_profile(&s, &SparseVector::new(), 2, &opts()).unwrap();
        assert_eq!(p.norm, 0.0);
        assert!(p.sigma.iter().all(|e| e.value == 0.0));
    }

    #[test]
    fn profile_interleaved_tie() {
        let s = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap();
        let f = v(&[(1, 1.0), (2, 1.0)]);
        let p = error_profile(&s, &f, 1, &opts()).unwrap();
        assert!((p.sigma[1].value - 1.0).abs() < 1e-12);
        assert!((p.gamma[1].value - 1.0).abs() < 1e-12);
    }

    fn random_vector(rng: &mut SplitMix64, max_support: usize, graded: bool) -> SparseVector {
        let size = 1 + rng.below(max_support as u64) as usize;
        let idx = rng.distinct_indices(size, 2 * max_support as u64);
        SparseVector::from_pairs(idx.into_iter().enumerate().map(|(k, i)| {
            let mag = if graded {
                1.0 + (k as f64 + 1.0) * 0.37
            } else {
                [0.5, 1.0, 1.0, 2.0][rng.below(4) as usize]
            };
            (i, rng.sign() * mag)
        }))
        .unwrap()
    }

    /// On lp and lorentz_d, σ = σ̃ = γ = ϑ exactly on strictly graded vectors.
    #[test]
    fn all_four_coincide_on_graded_symmetric() {
        let mut rng = SplitMix64::new(0xc0de);
        for space in [
            SpaceDescriptor::lp(1.0).unwrap(),
            SpaceDescriptor::lp(0.5).unwrap(),
            SpaceDescriptor::lorentz_d(0.5, 1.0).unwrap(),
        ] {
            for _ in 0..50 {
                let f = random_vector(&mut rng, 6, true);
                let p = error_profile(&space, &f, f.support_len(), &opts()).unwrap();
                for n in 0..=f.support_len() {
                    let s = p.sigma[n].value;
                    for other in [&p.sigma_tilde[n], &p.gamma[n], &p.theta[n]] {
                        assert!((other.value - s).abs() <= 1e-12 * (1.0 + s));
                    }
                }
            }
        }
    }

    /// Chain invariants across all families, ties included.
    #[test]
    fn chain_holds_on_random_vectors() {
        let mut rng = SplitMix64::new(0xd1ce);
        let spaces = [
            SpaceDescriptor::lp(1.0).unwrap(),
            SpaceDescriptor::lp(2.0).unwrap(),
            SpaceDescriptor::lp(0.5).unwrap(),
            SpaceDescriptor::lorentz_d(0.5, 1.0).unwrap(),
            SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap(),
            SpaceDescriptor::summing_c0(),
        ];
        for space in spaces {
            for _ in 0..40 {
                let f = random_vector(&mut rng, 6, false);
                // error_profile enforces the chain internally.
                error_profile(&space, &f, f.support_len() + 1, &opts()).unwrap();
            }
        }
    }

    /// σ's summing pool (supp ∪ window past max) really dominates the full
    /// index range: exhaustive comparison against every cut set inside
    /// [1, max(supp)+4], gap indices included.
    #[test]
    fn summing_pool_dominance() {
        use crate::solver::{tail_block_min, tail_sums};
        let mut rng = SplitMix64::new(0x6a9);
        for _ in 0..300 {
            // Sparse support with gaps inside [1, 10].
            let size = 2 + rng.below(4) as usize;
            let idx = rng.distinct_indices(size, 10);
            let f = SparseVector::from_pairs(
                idx.into_iter().map(|i| (i, rng.sign() * rng.range_f64(0.1, 2.0))),
            )
            .unwrap();
            let space = SpaceDescriptor::summing_c0();
            let len = f.max_index().unwrap() + 4;
            let coeffs: Vec<(u64, f64)> = f.iter().collect();
            let tails = tail_sums(&coeffs, len);
            for n in 1..f.support_len() {
                let fast = sigma(&space, &f, n, &opts()).unwrap().value;
                let mut full = f64::INFINITY;
                for combo in crate::greedy::Combinations::new(len as usize, n) {
                    let cuts: Vec<u64> = combo.iter().map(|&i| i as u64 + 1).collect();
                    full = full.min(tail_block_min(&tails, &cuts).value);
                }
                assert!(
                    (fast - full).abs() <= 1e-12 * (1.0 + full),
                    "pool missed the optimum: fast {fast} vs full {full}"
                );
            }
        }
    }

    #[test]
    fn too_many_candidates_error() {
        let f = SparseVector::from_pairs((1..=40u64).map(|i| (i, 1.0 + i as f64 * 0.01))).unwrap();
        let s = SpaceDescriptor::summing_c0();
        let err = sigma(&s, &f, 20, &ErrorOpts { max_candidates: 1000, ..opts() }).unwrap_err();
        assert!(matches!(err, ApproxError::TooManyCandidates { .. }));
    }
}
