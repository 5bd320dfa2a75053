//! Class quasi-norms built from weighted error sequences.
//!
//! For a weight w and 0 < q ≤ ∞,
//! ‖f‖ = ‖f‖_𝕏 + (Σ_{n≥1} (w(n)·eₙ(f))^q / n)^(1/q) (sup over n for q = ∞),
//! with eₙ one of σₙ (best-approximation class), γₙ (greedy class) or ϑₙ
//! (Chebyshev-greedy class). On finitely supported f the sum terminates at
//! n = |supp(f)| − 1. The three norms always satisfy the chain
//! ‖f‖_A ≤ ‖f‖_CG ≤ ‖f‖_G.

use crate::errors::{error_profile, ApproxError, ErrorOpts, ErrorProfile, ValueStatus};
use crate::lorentz::{product_weight_lorentz, q_aggregate};
use crate::parallel::map_trials;
use crate::rng::SplitMix64;
use crate::spaces::{SpaceDescriptor, SparseVector};
use crate::weights::Weight;
use serde::{Deserialize, Serialize};

/// Parameters of a class quasi-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub weight: Weight,
    /// q ∈ (0, ∞]; ∞ encoded as `f64::INFINITY`.
    pub q: f64,
}

impl ClassParams {
    pub fn new(weight: Weight, q: f64) -> Self {
        assert!(q > 0.0);
        Self { weight, q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// σ-based best-approximation class.
    BestApprox,
    /// γ-based greedy class.
    Greedy,
    /// ϑ-based Chebyshev-greedy class.
    ChebyshevGreedy,
}

/// The three class norms of one vector, plus the weighted-Lorentz reference
/// norm when a democracy table is supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassNorms {
    pub a_norm: f64,
    pub cg_norm: f64,
    pub g_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lorentz_ref: Option<f64>,
    pub status: ValueStatus,
}

/// Aggregate a class norm from a precomputed profile. The profile must
/// extend to at least |supp(f)| − 1.
pub fn aggregate_from_profile(
    profile: &ErrorProfile,
    params: &ClassParams,
    which: ClassKind,
) -> f64 {
    let seq = match which {
        ClassKind::BestApprox => &profile.sigma,
        ClassKind::Greedy => &profile.gamma,
        ClassKind::ChebyshevGreedy => &profile.theta,
    };
    let top = profile.support_len.saturating_sub(1).min(profile.max_order);
    let terms: Vec<(f64, f64)> = (1..=top)
        .map(|n| {
            (
                params.weight.eval(n as u64) * seq[n].value,
                1.0 / n as f64,
            )
        })
        .collect();
    profile.norm + q_aggregate(&terms, params.q)
}

/// ‖f‖ in the requested class; computes the error profile internally.
pub fn class_norm(
    space: &SpaceDescriptor,
    f: &SparseVector,
    params: &ClassParams,
    which: ClassKind,
    err_opts: &ErrorOpts,
) -> Result<(f64, ValueStatus), ApproxError> {
    let order = f.support_len().saturating_sub(1);
    let profile = error_profile(space, f, order, err_opts)?;
    Ok((
        aggregate_from_profile(&profile, params, which),
        profile.worst_status(),
    ))
}

/// All three class norms with the chain verdict
/// (true iff a ≤ cg ≤ g within 1e−9 relative).
pub fn chain_check(
    space: &SpaceDescriptor,
    f: &SparseVector,
    params: &ClassParams,
    err_opts: &ErrorOpts,
) -> Result<(ClassNorms, bool), ApproxError> {
    chain_check_with_ref(space, f, params, None, err_opts)
}

/// As [`chain_check`], filling `lorentz_ref` with ‖f‖_{ℓ^q_{w·h_r}} when a
/// right-democracy table (1-indexed, covering |supp(f)|) is supplied.
pub fn chain_check_with_ref(
    space: &SpaceDescriptor,
    f: &SparseVector,
    params: &ClassParams,
    h_r_table: Option<&[f64]>,
    err_opts: &ErrorOpts,
) -> Result<(ClassNorms, bool), ApproxError> {
    let order = f.support_len().saturating_sub(1);
    let profile = error_profile(space, f, order, err_opts)?;
    let lorentz_ref = h_r_table.map(|table| {
        product_weight_lorentz(f, &params.weight, table, params.q)
            .expect("h_r table covers the support")
    });
    let norms = ClassNorms {
        a_norm: aggregate_from_profile(&profile, params, ClassKind::BestApprox),
        cg_norm: aggregate_from_profile(&profile, params, ClassKind::ChebyshevGreedy),
        g_norm: aggregate_from_profile(&profile, params, ClassKind::Greedy),
        lorentz_ref,
        status: profile.worst_status(),
    };
    let tol = |x: f64| 1e-9 * (1.0 + x.abs());
    let ok = norms.a_norm <= norms.cg_norm + tol(norms.cg_norm)
        && norms.cg_norm <= norms.g_norm + tol(norms.g_norm);
    Ok((norms, ok))
}

/// Magnitude families for the seeded vector generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// |aₖ| = r^k, 0 < r < 1.
    Geometric { ratio: f64 },
    /// |aₖ| uniform in [1/2, 1].
    Uniform,
    /// |aₖ| = 1 + δₖ with a strictly increasing ladder δₖ ∈ (0, delta);
    /// mirrors the near-tie perturbations of the witness constructions.
    NearTie { delta: f64 },
    /// Cycle through the three families per trial.
    Mixed,
}

impl GeneratorSpec {
    /// A vector with `size` support points inside 1..=index_range, uniform
    /// signs, magnitudes per the family.
    pub fn sample(
        &self,
        rng: &mut SplitMix64,
        size: usize,
        index_range: u64,
    ) -> SparseVector {
        let spec = match self {
            GeneratorSpec::Mixed => match rng.below(3) {
                0 => GeneratorSpec::Geometric { ratio: 0.7 },
                1 => GeneratorSpec::Uniform,
                _ => GeneratorSpec::NearTie { delta: 1e-3 },
            },
            s => *s,
        };
        let idx = rng.distinct_indices(size, index_range.max(size as u64));
        let mut mags: Vec<f64> = match spec {
            GeneratorSpec::Geometric { ratio } => {
                (1..=size).map(|k| ratio.powi(k as i32)).collect()
            }
            GeneratorSpec::Uniform => (0..size).map(|_| rng.range_f64(0.5, 1.0)).collect(),
            GeneratorSpec::NearTie { delta } => (1..=size)
                .map(|k| 1.0 + delta * k as f64 / (size as f64 + 1.0))
                .collect(),
            GeneratorSpec::Mixed => unreachable!(),
        };
        rng.shuffle(&mut mags);
        SparseVector::from_pairs(
            idx.into_iter()
                .zip(mags)
                .map(|(i, m)| (i, rng.sign() * m)),
        )
        .expect("indices are 1-based")
    }
}

/// Per-support-size maxima of the class-norm ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub support_size: usize,
    pub ratio_name: String,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub trials_per_size: usize,
    pub seed: u64,
    pub sampled: bool,
}

impl SweepReport {
    pub fn max_for(&self, size: usize, name: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.support_size == size && r.ratio_name == name)
            .map(|r| r.max_ratio)
    }
}

pub const RATIO_NAMES: [&str; 4] = ["g_over_a", "cg_over_a", "a_over_lref", "lref_over_a"];

/// Max ratios {G/A, CG/A, A/Lref, Lref/A} over seeded trials, grouped by
/// support size. `h_r_table` is the right democracy function of the space,
/// 1-indexed, long enough for the largest support size.
#[allow(clippy::too_many_arguments)]
pub fn ratio_sweep(
    space: &SpaceDescriptor,
    params: &ClassParams,
    generator: &GeneratorSpec,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    h_r_table: &[f64],
    err_opts: &ErrorOpts,
) -> Result<SweepReport, ApproxError> {
    let mut rows = Vec::new();
    let mut sampled = false;
    for (si, &size) in sizes.iter().enumerate() {
        let results = map_trials(trials, |t| {
            let mut rng = SplitMix64::new(seed)
                .fork(si as u64)
                .fork(t as u64);
            let f = generator.sample(&mut rng, size, 4 * size as u64);
            let order = f.support_len().saturating_sub(1);
            let profile = error_profile(space, &f, order, err_opts)?;
            let a = aggregate_from_profile(&profile, params, ClassKind::BestApprox);
            let g = aggregate_from_profile(&profile, params, ClassKind::Greedy);
            let cg = aggregate_from_profile(&profile, params, ClassKind::ChebyshevGreedy);
            let lref = product_weight_lorentz(&f, &params.weight, h_r_table, params.q)
                .expect("h_r table long enough");
            Ok::<_, ApproxError>((
                [g / a, cg / a, a / lref, lref / a],
                profile.worst_status(),
            ))
        });
        let mut maxima = [f64::NEG_INFINITY; 4];
        for r in results {
            let (ratios, status) = r?;
            for (m, v) in maxima.iter_mut().zip(ratios) {
                *m = m.max(v);
            }
            if status == ValueStatus::Sampled {
                sampled = true;
            }
        }
        for (name, m) in RATIO_NAMES.iter().zip(maxima) {
            rows.push(SweepRow {
                support_size: size,
                ratio_name: (*name).into(),
                max_ratio: m,
            });
        }
    }
    Ok(SweepReport {
        rows,
        trials_per_size: trials,
        seed,
        sampled,
    })
}
