//! Weight sequences and their regularity analytics.
//!
//! A weight is a positive sequence w(1), w(2), … given by a closed-form
//! family. The analytics follow the dilation structure of the sequence:
//!
//! - the cumulative weight w̃(n) = Σ_{j≤n} w(j)/j,
//! - the dilation envelopes φ_w(m) = inf_k w(km)/w(k) and
//!   Φ_w(m) = sup_k w(km)/w(k),
//! - the dilation indices i_w = sup_{m>1} log φ_w(m)/log m and
//!   I_w = inf_{m>1} log Φ_w(m)/log m,
//! - the power-type lower/upper regularity properties: LRP means
//!   C·(w(m)/w(n)) ≥ (m/n)^β for all 1 ≤ n ≤ m, URP the same with ≤.
//!
//! The inf/sup range over all of ℕ; computed values are truncated to explicit
//! horizons and reported as such. For the `power` family the ratios are
//! constant in k, so the truncated values are exact and serve as the oracle
//! for the enumerated paths.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("weight values must be positive")]
    NonPositive,
    #[error("table weight needs at least one value")]
    EmptyTable,
    #[error("index k*m overflows at k = {k}, m = {m}")]
    IndexOverflow { k: u64, m: u64 },
}

/// How a `table` weight extends past its stored values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TableExtension {
    /// w(n) = last stored value for n past the table.
    #[default]
    RepeatLast,
    /// Continue geometrically with ratio w(L)/w(L-1).
    LastRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Weight {
    /// w(n) = n^α
    Power { alpha: f64 },
    /// w(n) = n^α (1 + log n)^β
    PowerLog { alpha: f64, beta: f64 },
    /// Finite positive table plus an extension rule.
    Table {
        values: Vec<f64>,
        #[serde(default)]
        extend: TableExtension,
    },
}

impl Weight {
    pub fn power(alpha: f64) -> Self {
        Self::Power { alpha }
    }

    pub fn power_log(alpha: f64, beta: f64) -> Self {
        Self::PowerLog { alpha, beta }
    }

    pub fn table(values: Vec<f64>, extend: TableExtension) -> Result<Self, WeightError> {
        if values.is_empty() {
            return Err(WeightError::EmptyTable);
        }
        if values.iter().any(|&v| v <= 0.0 || v.is_nan()) {
            return Err(WeightError::NonPositive);
        }
        Ok(Self::Table { values, extend })
    }

    /// w(n). Panics on n = 0; operations that use the convention
    /// w(0) := w(1) apply it before calling.
    pub fn eval(&self, n: u64) -> f64 {
        assert!(n >= 1, "weights are defined on n >= 1");
        match self {
            Self::Power { alpha } => (n as f64).powf(*alpha),
            Self::PowerLog { alpha, beta } => {
                let x = n as f64;
                x.powf(*alpha) * (1.0 + x.ln()).powf(*beta)
            }
            Self::Table { values, extend } => {
                let len = values.len() as u64;
                if n <= len {
                    values[(n - 1) as usize]
                } else {
                    match extend {
                        TableExtension::RepeatLast => values[values.len() - 1],
                        TableExtension::LastRatio => {
                            let last = values[values.len() - 1];
                            let ratio = if values.len() >= 2 {
                                last / values[values.len() - 2]
                            } else {
                                1.0
                            };
                            last * ratio.powf((n - len) as f64)
                        }
                    }
                }
            }
        }
    }

    /// w̃(n) = Σ_{j=1}^{n} w(j)/j, exact partial sum (compensated).
    pub fn cumulative(&self, n: u64) -> f64 {
        assert!(n >= 1);
        let mut sum = 0.0;
        let mut comp = 0.0;
        for j in 1..=n {
            let term = self.eval(j) / j as f64;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    pub fn is_power(&self) -> Option<f64> {
        match self {
            Self::Power { alpha } => Some(*alpha),
            _ => None,
        }
    }

    pub fn compact(&self) -> String {
        match self {
            Self::Power { alpha } => format!("power:{alpha}"),
            Self::PowerLog { alpha, beta } => format!("power_log:{alpha}:{beta}"),
            Self::Table { values, .. } => format!("table[{}]", values.len()),
        }
    }
}

/// (min, max) of w(km)/w(k) over 1 ≤ k ≤ K: truncations of φ_w(m), Φ_w(m).
///
/// For the power family the ratio is constant in k and the exact value m^α is
/// returned for both ends.
pub fn phi_bounds(w: &Weight, m: u64, k_horizon: u64) -> Result<(f64, f64), WeightError> {
    assert!(m >= 2 && k_horizon >= 1);
    if let Some(alpha) = w.is_power() {
        let exact = (m as f64).powf(alpha);
        return Ok((exact, exact));
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for k in 1..=k_horizon {
        let km = k.checked_mul(m).ok_or(WeightError::IndexOverflow { k, m })?;
        let r = w.eval(km) / w.eval(k);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

/// Truncated dilation indices (i_w, I_w) over 2 ≤ m ≤ M with inner horizon K.
///
/// Under truncation the first component is a lower estimate of i_w and the
/// second an upper estimate of I_w; both are exact for the power family.
pub fn regularity_indices(w: &Weight, m_max: u64, k_horizon: u64) -> (f64, f64) {
    assert!(m_max >= 2 && k_horizon >= 1);
    if let Some(alpha) = w.is_power() {
        return (alpha, alpha);
    }
    let mut i_w = f64::NEG_INFINITY;
    let mut cap_i_w = f64::INFINITY;
    for m in 2..=m_max {
        let Ok((phi, cap_phi)) = phi_bounds(w, m, k_horizon) else {
            break;
        };
        let logm = (m as f64).ln();
        i_w = i_w.max(phi.ln() / logm);
        cap_i_w = cap_i_w.min(cap_phi.ln() / logm);
    }
    (i_w, cap_i_w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularitySide {
    Lrp,
    Urp,
}

/// Outcome of a regularity scan over all pairs 1 ≤ n ≤ m ≤ N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityCheck {
    pub holds: bool,
    /// First (n, m) violating pair in scan order, if any.
    pub violation: Option<(u64, u64)>,
}

/// LRP: C·(w(m)/w(n)) ≥ (m/n)^β for all 1 ≤ n ≤ m ≤ N; URP with ≤.
pub fn check_regularity(
    w: &Weight,
    beta: f64,
    c: f64,
    n_horizon: u64,
    side: RegularitySide,
) -> RegularityCheck {
    assert!(c > 0.0 && beta > 0.0 && n_horizon >= 1);
    let vals: Vec<f64> = (1..=n_horizon).map(|n| w.eval(n)).collect();
    for n in 1..=n_horizon {
        for m in n..=n_horizon {
            let lhs = c * vals[(m - 1) as usize] / vals[(n - 1) as usize];
            let rhs = (m as f64 / n as f64).powf(beta);
            let ok = match side {
                RegularitySide::Lrp => lhs >= rhs * (1.0 - 1e-12),
                RegularitySide::Urp => lhs <= rhs * (1.0 + 1e-12),
            };
            if !ok {
                return RegularityCheck {
                    holds: false,
                    violation: Some((n, m)),
                };
            }
        }
    }
    RegularityCheck {
        holds: true,
        violation: None,
    }
}

/// Full classification of a weight over an explicit horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightAnalysis {
    /// Length of the longest non-decreasing prefix found, capped at `horizon`.
    pub nondecreasing_up_to: u64,
    /// Smallest C with w(2n) ≤ C·w(n) over n ≤ horizon.
    pub doubling_constant: f64,
    pub i_w_estimate: f64,
    #[serde(rename = "I_w_estimate")]
    pub cap_i_w_estimate: f64,
    /// (C, β) validating the LRP on the horizon, if found.
    pub lrp_witness: Option<(f64, f64)>,
    /// (C, β) with β < 1 validating the URP on the horizon, if found.
    pub urp_witness: Option<(f64, f64)>,
    pub horizon: u64,
}

impl WeightAnalysis {
    /// Non-decreasing over the whole checked horizon.
    pub fn is_nondecreasing(&self) -> bool {
        self.nondecreasing_up_to >= self.horizon
    }
}

/// Fill a [`WeightAnalysis`] over horizon N ≥ 4.
///
/// The LRP witness searches β on a geometric grid below the i_w estimate and
/// C over {1, 2, 4, …}; the URP witness searches β on a grid between the I_w
/// estimate and 1. All statements are "up to horizon N".
pub fn classify(w: &Weight, n_horizon: u64) -> WeightAnalysis {
    assert!(n_horizon >= 4);
    let mut nondecreasing_up_to = n_horizon;
    let mut prev = w.eval(1);
    for n in 2..=n_horizon {
        let cur = w.eval(n);
        if cur < prev {
            nondecreasing_up_to = n - 1;
            break;
        }
        prev = cur;
    }

    let mut doubling = 0.0f64;
    for n in 1..=n_horizon {
        doubling = doubling.max(w.eval(2 * n) / w.eval(n));
    }

    let m_max = n_horizon.clamp(2, 1024);
    let k_horizon = n_horizon.min(1024);
    let (i_w, cap_i_w) = regularity_indices(w, m_max, k_horizon);

    let mut lrp_witness = None;
    if i_w > 1e-9 {
        'outer: for factor in [1.0, 0.95, 0.9, 0.8, 0.5, 0.25] {
            let beta = i_w * factor;
            if beta <= 0.0 {
                continue;
            }
            for c_exp in 0..6 {
                let c = (1u64 << c_exp) as f64;
                if check_regularity(w, beta, c, n_horizon, RegularitySide::Lrp).holds {
                    lrp_witness = Some((c, beta));
                    break 'outer;
                }
            }
        }
    }

    let mut urp_witness = None;
    if cap_i_w < 1.0 - 1e-9 {
        'outer: for factor in [0.0, 0.05, 0.1, 0.25, 0.5] {
            let beta = cap_i_w + (1.0 - cap_i_w) * factor;
            if beta <= 0.0 || beta >= 1.0 {
                continue;
            }
            for c_exp in 0..6 {
                let c = (1u64 << c_exp) as f64;
                if check_regularity(w, beta, c, n_horizon, RegularitySide::Urp).holds {
                    urp_witness = Some((c, beta));
                    break 'outer;
                }
            }
        }
    }

    WeightAnalysis {
        nondecreasing_up_to,
        doubling_constant: doubling,
        i_w_estimate: i_w,
        cap_i_w_estimate: cap_i_w,
        lrp_witness,
        urp_witness,
        horizon: n_horizon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_closed_forms() {
        assert_eq!(Weight::power(0.5).eval(4), 2.0);
        assert_eq!(Weight::power(0.25).eval(1), 1.0);
        // log 1 = 0
        assert_eq!(Weight::power_log(0.5, 1.0).eval(1), 1.0);
    }

    #[test]
    #[should_panic]
    fn eval_rejects_zero() {
        Weight::power(0.5).eval(0);
    }

    #[test]
    fn table_extensions() {
        let t = Weight::table(vec![1.0, 2.0], TableExtension::RepeatLast).unwrap();
        assert_eq!(t.eval(2), 2.0);
        assert_eq!(t.eval(100), 2.0);
        let t = Weight::table(vec![1.0, 2.0], TableExtension::LastRatio).unwrap();
        assert_eq!(t.eval(3), 4.0);
        assert_eq!(t.eval(5), 16.0);
        let single = Weight::table(vec![3.0], TableExtension::LastRatio).unwrap();
        assert_eq!(single.eval(9), 3.0);
        assert!(Weight::table(vec![], TableExtension::RepeatLast).is_err());
        assert!(Weight::table(vec![1.0, -1.0], TableExtension::RepeatLast).is_err());
    }

    #[test]
    fn cumulative_values() {
        let w = Weight::power(0.5);
        assert_eq!(w.cumulative(1), 1.0);
        // 1 + 2^(-1/2) + 3^(-1/2), by direct summation
        let expect = 1.0 + 2f64.powf(-0.5) + 3f64.powf(-0.5);
        assert!((w.cumulative(3) - expect).abs() < 1e-14);
        assert!((expect - 2.28446).abs() < 1e-5);
        // Σ j/j = n
        assert!((Weight::power(1.0).cumulative(4) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn cumulative_strictly_increasing() {
        for w in [
            Weight::power(0.0),
            Weight::power(0.7),
            Weight::power_log(0.3, 1.0),
        ] {
            let mut prev = 0.0;
            for n in 1..=64 {
                let cur = w.cumulative(n);
                assert!(cur > prev);
                prev = cur;
            }
        }
    }

    #[test]
    fn phi_bounds_families() {
        assert_eq!(phi_bounds(&Weight::power(0.5), 4, 1000).unwrap(), (2.0, 2.0));
        assert_eq!(phi_bounds(&Weight::power(0.0), 7, 10).unwrap(), (1.0, 1.0));
        // doubling-step table: ratios w(2k)/w(k) for k = 1, 2, 3 are 1, 2, 2
        let t = Weight::table(vec![1.0, 1.0, 2.0, 2.0, 4.0, 4.0], TableExtension::RepeatLast)
            .unwrap();
        assert_eq!(phi_bounds(&t, 2, 3).unwrap(), (1.0, 2.0));
    }

    #[test]
    fn phi_bounds_lower_le_upper() {
        let t = Weight::power_log(0.4, 2.0);
        for m in 2..=16 {
            let (lo, hi) = phi_bounds(&t, m, 200).unwrap();
            assert!(lo <= hi);
        }
    }

    #[test]
    fn phi_bounds_overflow_reports_k() {
        let t = Weight::table(vec![1.0], TableExtension::RepeatLast).unwrap();
        let err = phi_bounds(&t, u64::MAX / 2, 3).unwrap_err();
        assert_eq!(err, WeightError::IndexOverflow { k: 3, m: u64::MAX / 2 });
    }

    #[test]
    fn regularity_indices_power_exact() {
        for alpha in [0.0, 0.25, 0.5, 1.0] {
            let (i, cap) = regularity_indices(&Weight::power(alpha), 64, 1000);
            assert!((i - alpha).abs() < 1e-12);
            assert!((cap - alpha).abs() < 1e-12);
        }
    }

    #[test]
    fn check_regularity_power_cases() {
        let w = Weight::power(0.5);
        assert!(check_regularity(&w, 0.4, 1.0, 256, RegularitySide::Lrp).holds);
        let r = check_regularity(&w, 0.6, 1.0, 256, RegularitySide::Lrp);
        assert!(!r.holds);
        assert_eq!(r.violation, Some((1, 2)));
        // single pair n = m = 1 always holds
        assert!(check_regularity(&w, 5.0, 1.0, 1, RegularitySide::Lrp).holds);
    }

    /// (C, β) true implies (C' ≥ C, β' ≤ β) true, on sampled triples.
    #[test]
    fn check_regularity_monotone() {
        let w = Weight::power_log(0.5, 1.0);
        for &(c, beta) in &[(1.0, 0.3), (2.0, 0.45), (4.0, 0.5)] {
            if check_regularity(&w, beta, c, 64, RegularitySide::Lrp).holds {
                for (cf, bf) in [(2.0, 1.0), (1.0, 0.5), (4.0, 0.25)] {
                    assert!(check_regularity(&w, beta * bf, c * cf, 64, RegularitySide::Lrp).holds);
                }
            }
        }
    }

    #[test]
    fn classify_power_quarter() {
        let a = classify(&Weight::power(0.25), 1024);
        assert!(a.is_nondecreasing());
        assert!((a.doubling_constant - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((a.i_w_estimate - 0.25).abs() < 1e-12);
        assert!(a.lrp_witness.is_some());
        assert!(a.urp_witness.is_some());
        assert!(a.doubling_constant >= 1.0);
    }

    #[test]
    fn classify_constant_weight() {
        let a = classify(&Weight::power(0.0), 64);
        assert_eq!(a.doubling_constant, 1.0);
        assert_eq!(a.i_w_estimate, 0.0);
        assert!(a.lrp_witness.is_none());
    }

    #[test]
    fn classify_linear_weight_urp_fails() {
        let a = classify(&Weight::power(1.0), 64);
        assert!((a.cap_i_w_estimate - 1.0).abs() < 1e-12);
        assert!(a.urp_witness.is_none());
    }

    #[test]
    fn classify_flags_non_monotone() {
        let t = Weight::table(vec![1.0, 3.0, 2.0, 4.0], TableExtension::RepeatLast).unwrap();
        let a = classify(&t, 8);
        assert_eq!(a.nondecreasing_up_to, 2);
        assert!(!a.is_nondecreasing());
    }
}
