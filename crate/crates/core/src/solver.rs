//! Inner coefficient minimizers.
//!
//! For the summing-basis norm, minimizing ‖f − Σ_{b∈B} c_b x_b‖ over the
//! coefficients is solved exactly: substituting u_b = Σ_{b'∈B, b'≥b} c_{b'}
//! turns the residual tails into T_k(f) − u_{block(k)}, the objective
//! separates per block of indices between consecutive elements of B, and each
//! block's optimum is the Chebyshev center (max+min)/2 of its tail values.
//!
//! A derivative-free cyclic coordinate descent is kept as an independent
//! cross-check route and as the refinement pass of the brute-force oracle.

/// Result of an exact tail-block minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBlockSolution {
    /// Minimal value of max_k |T_k − u_{block(k)}|.
    pub value: f64,
    /// Optimal coefficients c_b, aligned with the cut set passed in.
    pub coefficients: Vec<f64>,
}

/// Minimize the summing norm of f − g over g supported on `cuts`.
///
/// `tails[k-1]` must hold T_k(f) = Σ_{n≥k} aₙ for 1 ≤ k ≤ len, with len at
/// least max(supp(f)); `cuts` are the chosen support indices, ascending,
/// each within 1..=len.
pub fn tail_block_min(tails: &[f64], cuts: &[u64]) -> TailBlockSolution {
    debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
    let len = tails.len() as u64;
    let mut value = 0.0f64;
    let mut u = vec![0.0f64; cuts.len()];

    // Blocks (prev, b] for consecutive cuts; the region above the last cut
    // is uncontrolled.
    let mut prev = 0u64;
    for (ci, &b) in cuts.iter().enumerate() {
        debug_assert!(b >= 1 && b <= len);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in prev..b {
            let t = tails[k as usize];
            lo = lo.min(t);
            hi = hi.max(t);
        }
        u[ci] = 0.5 * (lo + hi);
        value = value.max(0.5 * (hi - lo));
        prev = b;
    }
    for k in prev..len {
        value = value.max(tails[k as usize].abs());
    }

    // Recover c from the suffix sums u: c_{b_i} = u_i − u_{i+1}.
    let mut coefficients = vec![0.0f64; cuts.len()];
    for i in 0..cuts.len() {
        let next = if i + 1 < cuts.len() { u[i + 1] } else { 0.0 };
        coefficients[i] = u[i] - next;
    }
    TailBlockSolution { value, coefficients }
}

/// Tail sums T_k = Σ_{n≥k} aₙ for k = 1..=len of a coefficient slice indexed
/// from 1 (entries beyond the slice are zero).
pub fn tail_sums(coeffs: &[(u64, f64)], len: u64) -> Vec<f64> {
    let mut tails = vec![0.0f64; len as usize];
    let mut acc = 0.0;
    let mut next = coeffs.len();
    for k in (1..=len).rev() {
        while next > 0 && coeffs[next - 1].0 >= k {
            acc += coeffs[next - 1].1;
            next -= 1;
        }
        tails[(k - 1) as usize] = acc;
    }
    tails
}

#[derive(Debug, Clone, Copy)]
pub struct DescentOpts {
    pub tolerance: f64,
    pub max_iters: usize,
    pub restarts: usize,
}

impl Default for DescentOpts {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iters: 100_000,
            restarts: 4,
        }
    }
}

/// Cyclic coordinate descent with a shrinking bracketed line search per
/// coordinate. Subgradient-free; intended for convex objectives.
pub fn coordinate_descent<F: Fn(&[f64]) -> f64>(
    objective: F,
    start: &[f64],
    scale: f64,
    opts: &DescentOpts,
) -> (Vec<f64>, f64) {
    let mut best_x = start.to_vec();
    let mut best_v = objective(&best_x);
    for restart in 0..=opts.restarts {
        let mut x = best_x.clone();
        let mut v = best_v;
        let mut step = scale.max(1e-6) * 0.5f64.powi(restart as i32);
        let mut iters = 0usize;
        while step > opts.tolerance * 0.25 && iters < opts.max_iters {
            let mut improved = false;
            for i in 0..x.len() {
                iters += 1;
                for dir in [-1.0, 1.0] {
                    let cand = x[i] + dir * step;
                    let old = x[i];
                    x[i] = cand;
                    let cv = objective(&x);
                    if cv < v {
                        v = cv;
                        improved = true;
                    } else {
                        x[i] = old;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if v < best_v {
            best_v = v;
            best_x = x;
        }
    }
    (best_x, best_v)
}

/// Coarse-to-fine grid minimization over a box, used by the brute-force
/// oracle. Refines around the incumbent until the cell size drops below
/// `target_step`, then polishes with one coordinate-descent pass.
///
/// The zoom keeps the optimum of a convex objective inside the shrinking
/// box (the incumbent is within a cell of it), so localization converges
/// linearly even where axis descent would stall. One-dimensional problems
/// below 2·10⁴ grid points are scanned literally at `target_step` instead.
pub fn grid_minimize<F: Fn(&[f64]) -> f64>(
    objective: F,
    dim: usize,
    half_range: f64,
    target_step: f64,
) -> (Vec<f64>, f64) {
    if dim == 0 {
        return (Vec::new(), objective(&[]));
    }
    let mut best_x = vec![0.0f64; dim];
    let mut best_v = objective(&best_x);

    if dim == 1 && (2.0 * half_range / target_step) <= 2e4 {
        let steps = (2.0 * half_range / target_step).ceil() as usize;
        for i in 0..=steps {
            let x = -half_range + i as f64 * target_step;
            let v = objective(&[x]);
            if v < best_v {
                best_v = v;
                best_x = vec![x];
            }
        }
    } else {
        let points_per_dim = 13usize;
        let mut center = best_x.clone();
        let mut half = half_range;
        loop {
            let mut idx = vec![0usize; dim];
            loop {
                let x: Vec<f64> = idx
                    .iter()
                    .zip(&center)
                    .map(|(&i, &c)| c - half + 2.0 * half * i as f64 / (points_per_dim - 1) as f64)
                    .collect();
                let v = objective(&x);
                if v < best_v {
                    best_v = v;
                    best_x = x;
                }
                // odometer
                let mut d = 0;
                loop {
                    idx[d] += 1;
                    if idx[d] < points_per_dim {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                    if d == dim {
                        break;
                    }
                }
                if d == dim {
                    break;
                }
            }
            if 2.0 * half / (points_per_dim - 1) as f64 <= target_step {
                break;
            }
            center = best_x.clone();
            half /= 3.0;
        }
    }

    // The polish floor sits near one ulp: quasi-norm cusps (|x|^p, p < 1)
    // turn coordinate error into ~error^p value error, so localization must
    // go far below the requested value accuracy.
    let (x, v) = coordinate_descent(
        &objective,
        &best_x,
        target_step * 16.0,
        &DescentOpts {
            tolerance: (target_step * 1e-6).max(4e-16),
            max_iters: 200_000,
            restarts: 1,
        },
    );
    if v < best_v {
        (x, v)
    } else {
        (best_x, best_v)
    }
}
