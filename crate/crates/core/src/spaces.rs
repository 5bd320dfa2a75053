//! Concrete p-Banach sequence spaces: coefficient vectors, norm evaluators,
//! and basis-bound constants.
//!
//! Four basis/space families are supported, all over real scalars with signs
//! restricted to ±1:
//!
//! - `lp(p)`, 0 < p ≤ ∞, canonical basis;
//! - `lorentz_d(s, p)`, the Lorentz sequence space d(v, p) with
//!   v(n) = n^(s-1), 0 < s < 1 (v non-increasing);
//! - `interleaved_sum(p1, p2)`: the 1-norm direct sum of an ℓ^{p1} copy on
//!   odd indices and an ℓ^{p2} copy on even indices;
//! - `summing_c0`: the summing basis sₙ = e₁+…+eₙ of c₀, whose norm on
//!   coefficients is the max modulus of the tail sums.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(f64),
    #[error("lorentz_d requires 0 < s < 1, got {0}")]
    BadLorentzShape(f64),
    #[error("interleaved_sum requires p1, p2 >= 1, got ({0}, {1})")]
    BadInterleavedExponents(f64, f64),
    #[error("vector index 0 is not allowed (indices are 1-based)")]
    ZeroIndex,
}

/// A finitely supported coefficient vector f = Σ aₙ xₙ in basis coordinates.
///
/// Indices are 1-based; exact zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseVector {
    entries: BTreeMap<u64, f64>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from (index, coefficient) pairs. Zero coefficients are dropped;
    /// duplicate indices are summed; index 0 is rejected.
    pub fn from_pairs<I: IntoIterator<Item = (u64, f64)>>(pairs: I) -> Result<Self, SpaceError> {
        let mut entries = BTreeMap::new();
        for (idx, val) in pairs {
            if idx == 0 {
                return Err(SpaceError::ZeroIndex);
            }
            *entries.entry(idx).or_insert(0.0) += val;
        }
        entries.retain(|_, v| *v != 0.0);
        Ok(Self { entries })
    }

    pub fn get(&self, idx: u64) -> f64 {
        self.entries.get(&idx).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, idx: u64, val: f64) {
        assert!(idx != 0, "indices are 1-based");
        if val == 0.0 {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, val);
        }
    }

    /// supp(f): the stored (nonzero) indices, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        if lambda == 0.0 {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(&k, &v)| (k, lambda * v)).collect(),
        }
    }

    /// f - g, with exact cancellation removed.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.entries.clone();
        for (&k, &v) in &other.entries {
            let e = out.entry(k).or_insert(0.0);
            *e -= v;
            if *e == 0.0 {
                out.remove(&k);
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.entries.clone();
        for (&k, &v) in &other.entries {
            let e = out.entry(k).or_insert(0.0);
            *e += v;
            if *e == 0.0 {
                out.remove(&k);
            }
        }
        Self { entries: out }
    }

    /// Coefficient magnitudes sorted descending.
    pub fn magnitudes_desc(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.entries.values().map(|v| v.abs()).collect();
        m.sort_by(|a, b| b.partial_cmp(a).unwrap());
        m
    }
}

/// Which norm family a space uses, with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Lp {
        /// p ∈ (0, ∞]; ∞ encoded as `f64::INFINITY` ("inf" in configs).
        p: f64,
    },
    LorentzD {
        /// Shape of v(n) = n^(s-1), 0 < s < 1.
        s: f64,
        p: f64,
    },
    InterleavedSum {
        p1: f64,
        p2: f64,
    },
    SummingC0,
}

impl SpaceDescriptor {
    pub fn lp(p: f64) -> Result<Self, SpaceError> {
        if p <= 0.0 || p.is_nan() {
            return Err(SpaceError::NonPositiveExponent(p));
        }
        Ok(Self::Lp { p })
    }

    pub fn lorentz_d(s: f64, p: f64) -> Result<Self, SpaceError> {
        if p <= 0.0 || p.is_nan() {
            return Err(SpaceError::NonPositiveExponent(p));
        }
        if !(s > 0.0 && s < 1.0) {
            return Err(SpaceError::BadLorentzShape(s));
        }
        Ok(Self::LorentzD { s, p })
    }

    pub fn interleaved_sum(p1: f64, p2: f64) -> Result<Self, SpaceError> {
        if !(p1 >= 1.0 && p2 >= 1.0) {
            return Err(SpaceError::BadInterleavedExponents(p1, p2));
        }
        Ok(Self::InterleavedSum { p1, p2 })
    }

    pub fn summing_c0() -> Self {
        Self::SummingC0
    }

    /// The p for which the norm is a p-norm: ‖f+g‖^p ≤ ‖f‖^p + ‖g‖^p.
    pub fn p_exponent(&self) -> f64 {
        match *self {
            Self::Lp { p } => p.min(1.0),
            Self::LorentzD { p, .. } => p.min(1.0),
            Self::InterleavedSum { .. } | Self::SummingC0 => 1.0,
        }
    }

    /// The weight v(n) = n^(s-1) of a `lorentz_d` space at index n.
    pub fn lorentz_v(&self, n: u64) -> f64 {
        match *self {
            Self::LorentzD { s, .. } => (n as f64).powf(s - 1.0),
            _ => panic!("lorentz_v on a non-lorentz_d space"),
        }
    }

    /// ‖f‖ in this space. Exact per family formula.
    pub fn norm(&self, f: &SparseVector) -> f64 {
        match *self {
            Self::Lp { p } => lp_norm(f.entries.values().copied(), p),
            Self::LorentzD { s, p } => {
                let mags = f.magnitudes_desc();
                let mut sum = 0.0;
                for (i, a) in mags.iter().enumerate() {
                    let v = ((i + 1) as f64).powf(s - 1.0);
                    sum += a.powf(p) * v;
                }
                sum.powf(1.0 / p)
            }
            Self::InterleavedSum { p1, p2 } => {
                let odd = lp_norm(f.iter().filter(|(i, _)| i % 2 == 1).map(|(_, v)| v), p1);
                let even = lp_norm(f.iter().filter(|(i, _)| i % 2 == 0).map(|(_, v)| v), p2);
                odd + even
            }
            Self::SummingC0 => summing_norm(f),
        }
    }

    /// α₁, α₂, α₃ and the concavity modulus, closed-form per family.
    ///
    /// All four catalog families admit exact values, so `horizon` only
    /// matters should a family without a closed form be added.
    pub fn basis_bounds(&self, _horizon: u64) -> BasisBounds {
        let (alpha1, alpha2) = match *self {
            Self::Lp { .. } => (1.0, 1.0),
            Self::LorentzD { s, p } => {
                // ‖xₙ‖ = v(1)^(1/p) = 1; ‖xₙ*‖ = v(1)^(-1/p) = 1 for v(1)=1.
                let v1: f64 = 1.0f64.powf(s - 1.0);
                (v1.powf(1.0 / p), v1.powf(-1.0 / p))
            }
            Self::InterleavedSum { .. } => (1.0, 1.0),
            // |aₙ| = |tailₙ - tailₙ₊₁| ≤ 2 max|tail|, attained by 2xₙ - xₙ₊₁.
            Self::SummingC0 => (1.0, 2.0),
        };
        BasisBounds {
            alpha1,
            alpha2,
            alpha3: alpha1 * alpha2,
            concavity_modulus: 2f64.powf(1.0 / self.p_exponent() - 1.0),
        }
    }

    /// Rearrangement-invariant and 1-unconditional: best n-term supports are
    /// the n largest coefficients and inner optima are projections.
    pub fn is_symmetric_lattice(&self) -> bool {
        matches!(self, Self::Lp { .. } | Self::LorentzD { .. })
    }

    /// 1-unconditional lattice norm (coordinatewise monotone).
    pub fn is_lattice(&self) -> bool {
        !matches!(self, Self::SummingC0)
    }

    /// Compact text form used by the CLI (`lp:2`, `interleaved:1:2`, ...).
    pub fn compact(&self) -> String {
        match *self {
            Self::Lp { p } => {
                if p.is_infinite() {
                    "lp:inf".into()
                } else {
                    format!("lp:{p}")
                }
            }
            Self::LorentzD { s, p } => format!("lorentz_d:{s}:{p}"),
            Self::InterleavedSum { p1, p2 } => format!("interleaved:{p1}:{p2}"),
            Self::SummingC0 => "summing".into(),
        }
    }
}

fn lp_norm<I: Iterator<Item = f64>>(coeffs: I, p: f64) -> f64 {
    if p.is_infinite() {
        return coeffs.fold(0.0, |acc, v| acc.max(v.abs()));
    }
    // Scale by the max so large p and sub-one p stay in range.
    let vals: Vec<f64> = coeffs.map(|v| v.abs()).filter(|v| *v > 0.0).collect();
    let m = vals.iter().fold(0.0f64, |acc, &v| acc.max(v));
    if m == 0.0 {
        return 0.0;
    }
    let sum: f64 = vals.iter().map(|v| (v / m).powf(p)).sum();
    m * sum.powf(1.0 / p)
}

/// max_k |Σ_{n ≥ k} aₙ|: the c₀-norm of Σ aₙ sₙ. Tails are constant between
/// support points, so only tails at support indices need inspection.
fn summing_norm(f: &SparseVector) -> f64 {
    let mut tail = 0.0;
    let mut best = 0.0f64;
    for &v in f.entries.values().rev() {
        tail += v;
        best = best.max(tail.abs());
    }
    best
}

/// Bounds of the basis and its dual basis in a given space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisBounds {
    /// sup ‖xₙ‖
    pub alpha1: f64,
    /// sup ‖xₙ*‖
    pub alpha2: f64,
    /// sup ‖xₙ‖·‖xₙ*‖
    pub alpha3: f64,
    /// 2^(1/p - 1)
    pub concavity_modulus: f64,
}

/// Membership in the cube 𝒬 = {f : |xₙ*(f)| ≤ 1 ∀n}.
pub fn in_cube(f: &SparseVector) -> bool {
    f.iter().all(|(_, v)| v.abs() <= 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn v(pairs: &[(u64, f64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn lp_345() {
        let s = SpaceDescriptor::lp(2.0).unwrap();
        assert!((s.norm(&v(&[(1, 3.0), (2, 4.0)])) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn summing_alternating_pair() {
        let s = SpaceDescriptor::summing_c0();
        // tail sums are (0, -1)
        assert!((s.norm(&v(&[(1, 1.0), (2, -1.0)])) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interleaved_split() {
        let s = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap();
        let f = v(&[(1, 1.0), (3, 1.0), (2, 1.0), (4, 1.0)]);
        assert!((s.norm(&f) - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn lp_inf_is_sup() {
        let s = SpaceDescriptor::lp(f64::INFINITY).unwrap();
        assert_eq!(s.norm(&v(&[(1, -3.0), (5, 2.0)])), 3.0);
    }

    #[test]
    fn empty_vector_norm_zero() {
        for s in catalog() {
            assert_eq!(s.norm(&SparseVector::new()), 0.0);
        }
    }

    #[test]
    fn bad_descriptors_rejected() {
        assert!(SpaceDescriptor::lp(0.0).is_err());
        assert!(SpaceDescriptor::lp(-1.0).is_err());
        assert!(SpaceDescriptor::lorentz_d(1.5, 1.0).is_err());
        assert!(SpaceDescriptor::interleaved_sum(0.5, 2.0).is_err());
        assert!(SparseVector::from_pairs([(0u64, 1.0)]).is_err());
    }

    #[test]
    fn basis_bounds_closed_forms() {
        let b = SpaceDescriptor::lp(0.5).unwrap().basis_bounds(16);
        assert_eq!((b.alpha1, b.alpha2, b.alpha3), (1.0, 1.0, 1.0));
        assert!((b.concavity_modulus - 2.0).abs() < 1e-12);

        let b = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap().basis_bounds(16);
        assert_eq!((b.alpha1, b.alpha2, b.alpha3), (1.0, 1.0, 1.0));

        let b = SpaceDescriptor::summing_c0().basis_bounds(16);
        assert_eq!((b.alpha1, b.alpha2), (1.0, 2.0));
        // α₂ = 2 attained: f = 2x₁ - x₂ has ‖f‖ = 1 and |x₁*(f)| = 2.
        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 2.0), (2, -1.0)]);
        assert!((s.norm(&f) - 1.0).abs() < 1e-12);
        assert!(b.alpha3 <= b.alpha1 * b.alpha2 + 1e-12);
    }

    #[test]
    fn cube_membership() {
        assert!(in_cube(&v(&[(1, 0.5), (7, -1.0)])));
        assert!(!in_cube(&v(&[(2, 1.0001)])));
        assert!(in_cube(&SparseVector::new()));
    }

    fn catalog() -> Vec<SpaceDescriptor> {
        vec![
            SpaceDescriptor::lp(1.0).unwrap(),
            SpaceDescriptor::lp(2.0).unwrap(),
            SpaceDescriptor::lp(0.5).unwrap(),
            SpaceDescriptor::lp(f64::INFINITY).unwrap(),
            SpaceDescriptor::lorentz_d(0.5, 1.0).unwrap(),
            SpaceDescriptor::lorentz_d(0.5, 0.5).unwrap(),
            SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap(),
            SpaceDescriptor::summing_c0(),
        ]
    }

    fn random_vector(rng: &mut SplitMix64, max_support: usize) -> SparseVector {
        let size = 1 + rng.below(max_support as u64) as usize;
        let idx = rng.distinct_indices(size, 3 * max_support as u64);
        SparseVector::from_pairs(
            idx.into_iter()
                .map(|i| (i, rng.sign() * rng.range_f64(0.1, 2.0))),
        )
        .unwrap()
    }

    /// ‖f+g‖^p ≤ ‖f‖^p + ‖g‖^p with p = p_exponent, 10⁴ random pairs per family.
    #[test]
    fn p_triangle_inequality_bulk() {
        for s in catalog() {
            let p = s.p_exponent();
            let mut rng = SplitMix64::new(0xbead);
            for _ in 0..10_000 {
                let f = random_vector(&mut rng, 6);
                let g = random_vector(&mut rng, 6);
                let lhs = s.norm(&f.add(&g)).powf(p);
                let rhs = s.norm(&f).powf(p) + s.norm(&g).powf(p);
                assert!(
                    lhs <= rhs * (1.0 + 1e-9),
                    "p-triangle failed for {:?}: {lhs} > {rhs}",
                    s
                );
            }
        }
    }

    #[test]
    fn homogeneity() {
        let mut rng = SplitMix64::new(0xfeed);
        for s in catalog() {
            for _ in 0..500 {
                let f = random_vector(&mut rng, 6);
                let lambda = rng.range_f64(-3.0, 3.0);
                let a = s.norm(&f.scaled(lambda));
                let b = lambda.abs() * s.norm(&f);
                assert!((a - b).abs() <= 1e-9 * (1.0 + b), "{s:?}");
            }
        }
    }

    /// lp and lorentz_d norms are invariant under index permutation and sign
    /// flips; summing_c0 is not (witness pair below).
    #[test]
    fn rearrangement_invariance_and_summing_witness() {
        let mut rng = SplitMix64::new(0x51);
        for s in [
            SpaceDescriptor::lp(0.5).unwrap(),
            SpaceDescriptor::lp(2.0).unwrap(),
            SpaceDescriptor::lorentz_d(0.5, 1.0).unwrap(),
        ] {
            for _ in 0..300 {
                let f = random_vector(&mut rng, 6);
                let mut target: Vec<u64> = rng.distinct_indices(f.support_len(), 40);
                rng.shuffle(&mut target);
                let g = SparseVector::from_pairs(
                    f.iter()
                        .zip(target.iter())
                        .map(|((_, v), &j)| (j, rng.sign() * v)),
                )
                .unwrap();
                assert!((s.norm(&f) - s.norm(&g)).abs() <= 1e-9 * (1.0 + s.norm(&f)));
            }
        }
        // Documented witness: the summing norm sees sign order.
        let s = SpaceDescriptor::summing_c0();
        let f = v(&[(1, 1.0), (2, -1.0)]);
        let g = v(&[(1, 1.0), (2, 1.0)]);
        assert!((s.norm(&f) - 1.0).abs() < 1e-12);
        assert!((s.norm(&g) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn interleaved_odd_support_is_lp1_exact() {
        let s = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap();
        let f = v(&[(1, 1.5), (3, -0.25), (7, 2.0)]);
        assert_eq!(s.norm(&f), 1.5 + 0.25 + 2.0);
    }
}
