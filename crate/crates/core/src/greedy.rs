//! Thresholding-greedy combinatorics: signs, rearrangements, greedy sets and
//! orderings, projections, indicator sums.
//!
//! A greedy set of f of cardinality m is an m-element index set whose
//! coefficients dominate in modulus every coefficient outside it; ties at the
//! threshold magnitude make the set non-unique. Tie blocks are enumerated
//! exhaustively up to a cap and sampled (seeded, deterministic) beyond it.

use crate::rng::SplitMix64;
use crate::spaces::SparseVector;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GreedyError {
    #[error("tie enumeration needs {count} sets, above the cap of {cap}")]
    TieExplosion { count: u128, cap: usize },
}

/// ε(f): sign of each coefficient, +1 off the support (sgn 0 = 1).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SignPattern {
    signs: BTreeMap<u64, i8>,
}

impl SignPattern {
    pub fn all_plus() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i8)>>(pairs: I) -> Self {
        Self {
            signs: pairs.into_iter().filter(|&(_, s)| s == -1).collect(),
        }
    }

    pub fn get(&self, idx: u64) -> i8 {
        self.signs.get(&idx).copied().unwrap_or(1)
    }

    pub fn flip(&mut self, idx: u64) {
        if self.signs.remove(&idx).is_none() {
            self.signs.insert(idx, -1);
        }
    }
}

/// Sign pattern of f; indices outside supp(f) map to +1.
pub fn sign_of(f: &SparseVector) -> SignPattern {
    SignPattern {
        signs: f
            .iter()
            .filter(|&(_, v)| v < 0.0)
            .map(|(i, _)| (i, -1))
            .collect(),
    }
}

/// Non-increasing rearrangement of |coefficients|, zero-padded to length n.
pub fn rearrangement(f: &SparseVector, n: usize) -> Vec<f64> {
    let mut m = f.magnitudes_desc();
    m.resize(n, 0.0);
    m.truncate(n);
    m
}

/// All |aₙ| pairwise distinct on supp(f).
pub fn is_strictly_graded(f: &SparseVector) -> bool {
    let m = f.magnitudes_desc();
    m.windows(2).all(|w| w[0] != w[1])
}

/// The greedy sets of f of one cardinality, with per-set strictness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedySetFamily {
    pub cardinality: usize,
    /// Each set ascending; the list is in deterministic enumeration order.
    pub sets: Vec<Vec<u64>>,
    pub is_strict: Vec<bool>,
    /// True when tie resolutions were sampled rather than enumerated.
    pub sampled: bool,
}

impl GreedySetFamily {
    pub fn unique_strict(&self) -> bool {
        self.sets.len() == 1 && self.is_strict[0] && !self.sampled
    }
}

/// Coefficients grouped by magnitude (descending), plus the zero-extension
/// indices used when m exceeds |supp(f)|.
struct MagnitudeGroups {
    /// (magnitude, indices ascending)
    groups: Vec<(f64, Vec<u64>)>,
}

fn magnitude_groups(f: &SparseVector) -> MagnitudeGroups {
    let mut by_mag: BTreeMap<u64, (f64, Vec<u64>)> = BTreeMap::new();
    // Keyed by the bit pattern of the magnitude for exact grouping.
    for (i, v) in f.iter() {
        let mag = v.abs();
        by_mag.entry(mag.to_bits()).or_insert((mag, Vec::new())).1.push(i);
    }
    let mut groups: Vec<(f64, Vec<u64>)> = by_mag.into_values().collect();
    groups.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    MagnitudeGroups { groups }
}

/// Lowest-indexed zero coordinates outside supp(f), the canonical choice
/// when greedy sets must extend past the support.
fn zero_extension(f: &SparseVector, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = 1u64;
    let support: Vec<u64> = f.support().collect();
    let mut sp = 0usize;
    while out.len() < count {
        while sp < support.len() && support[sp] < candidate {
            sp += 1;
        }
        if sp < support.len() && support[sp] == candidate {
            sp += 1;
        } else {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
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

/// Enumerate GS(f, m). Ties at the threshold magnitude generate C(t, r)
/// combinations; an error is returned when that count exceeds `cap`.
///
/// For m > |supp(f)| the family is canonicalized to supp(f) plus the
/// lowest-indexed zero coordinates (single, non-strict set).
pub fn greedy_sets(f: &SparseVector, m: usize, cap: usize) -> Result<GreedySetFamily, GreedyError> {
    enumerate_greedy_sets(f, m, cap, None)
}

/// As [`greedy_sets`], degrading to deterministic seeded sampling of tie
/// resolutions when the combination count exceeds the cap.
pub fn greedy_sets_or_sample(
    f: &SparseVector,
    m: usize,
    cap: usize,
    seed: u64,
) -> GreedySetFamily {
    enumerate_greedy_sets(f, m, cap, Some(seed)).expect("sampling path cannot fail")
}

fn enumerate_greedy_sets(
    f: &SparseVector,
    m: usize,
    cap: usize,
    sample_seed: Option<u64>,
) -> Result<GreedySetFamily, GreedyError> {
    assert!(cap >= 1);
    let support_len = f.support_len();

    if m == 0 {
        // The empty set, vacuously strict.
        return Ok(GreedySetFamily {
            cardinality: 0,
            sets: vec![Vec::new()],
            is_strict: vec![true],
            sampled: false,
        });
    }

    if m >= support_len {
        let mut set: Vec<u64> = f.support().collect();
        let strict = m == support_len && support_len > 0;
        set.extend(zero_extension(f, m - support_len));
        set.sort_unstable();
        return Ok(GreedySetFamily {
            cardinality: m,
            sets: vec![set],
            is_strict: vec![strict],
            sampled: false,
        });
    }

    let groups = magnitude_groups(f).groups;
    let mut fixed: Vec<u64> = Vec::new();
    let mut gi = 0usize;
    while gi < groups.len() && fixed.len() + groups[gi].1.len() <= m {
        fixed.extend(&groups[gi].1);
        gi += 1;
    }

    let need = m - fixed.len();
    if need == 0 {
        // Block boundary: unique set, strict because the next magnitude is
        // strictly smaller (m < |supp| guarantees a next group).
        fixed.sort_unstable();
        return Ok(GreedySetFamily {
            cardinality: m,
            sets: vec![fixed],
            is_strict: vec![true],
            sampled: false,
        });
    }

    let tie_block = &groups[gi].1;
    let count = binomial(tie_block.len(), need);
    if count <= cap as u128 {
        let mut sets = Vec::with_capacity(count as usize);
        for pick in Combinations::new(tie_block.len(), need) {
            let mut s = fixed.clone();
            s.extend(pick.iter().map(|&i| tie_block[i]));
            s.sort_unstable();
            sets.push(s);
        }
        let strict = vec![false; sets.len()];
        return Ok(GreedySetFamily {
            cardinality: m,
            sets,
            is_strict: strict,
            sampled: false,
        });
    }

    match sample_seed {
        None => Err(GreedyError::TieExplosion {
            count,
            cap,
        }),
        Some(seed) => {
            let mut rng = SplitMix64::new(seed ^ 0x6a5d_39ea_a0b1_c942);
            let mut seen = std::collections::BTreeSet::new();
            let mut sets = Vec::new();
            let mut pool: Vec<u64> = tie_block.clone();
            let mut attempts = 0usize;
            while sets.len() < cap && attempts < cap * 4 {
                attempts += 1;
                rng.shuffle(&mut pool);
                let mut pick: Vec<u64> = pool[..need].to_vec();
                pick.sort_unstable();
                if seen.insert(pick.clone()) {
                    let mut s = fixed.clone();
                    s.extend(pick);
                    s.sort_unstable();
                    sets.push(s);
                }
            }
            let strict = vec![false; sets.len()];
            Ok(GreedySetFamily {
                cardinality: m,
                sets,
                is_strict: strict,
                sampled: true,
            })
        }
    }
}

/// Plain lexicographic k-combination iterator over 0..n.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    state: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            state: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let emit = self.state.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.state[i] < self.n - self.k + i {
                self.state[i] += 1;
                for j in i + 1..self.k {
                    self.state[j] = self.state[j - 1] + 1;
                }
                break;
            }
        }
        Some(emit)
    }
}

/// NSG(f): the orders m at which the greedy set is unique and strict,
/// scanned over 0 ≤ m ≤ |supp(f)|.
pub fn nsg(f: &SparseVector) -> Vec<usize> {
    let mut out = Vec::new();
    for m in 0..=f.support_len() {
        if let Ok(fam) = greedy_sets(f, m, 2) {
            if fam.unique_strict() {
                out.push(m);
            }
        }
    }
    out
}

/// Tie-break rule for greedy orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// A greedy ordering ρ of supp(f): non-increasing |coefficient| order, ties
/// broken by `tie_rule`. Every prefix of length n is a member of GS(f, n).
pub fn greedy_ordering(f: &SparseVector, tie_rule: TieRule) -> Vec<u64> {
    let mut items: Vec<(u64, f64)> = f.iter().map(|(i, v)| (i, v.abs())).collect();
    items.sort_by(|a, b| {
        b.1.partial_cmp(&a.1).unwrap().then_with(|| match tie_rule {
            TieRule::LowestIndex => a.0.cmp(&b.0),
            TieRule::HighestIndex => b.0.cmp(&a.0),
        })
    });
    items.into_iter().map(|(i, _)| i).collect()
}

/// P_A(f): restriction of the coefficients to A.
pub fn project(f: &SparseVector, set: &[u64]) -> SparseVector {
    SparseVector::from_pairs(
        set.iter()
            .map(|&i| (i, f.get(i)))
            .filter(|&(_, v)| v != 0.0),
    )
    .expect("projection indices come from valid sets")
}

/// 𝟙_{ε,A} = Σ_{n∈A} εₙ xₙ.
pub fn indicator(signs: &SignPattern, set: &[u64]) -> SparseVector {
    SparseVector::from_pairs(set.iter().map(|&i| (i, signs.get(i) as f64))).unwrap()
}
