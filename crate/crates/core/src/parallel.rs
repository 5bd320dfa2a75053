//! Deterministic trial-level parallelism.
//!
//! Trials are partitioned into contiguous chunks across scoped threads and
//! the per-trial results are merged in trial order, so the outcome is
//! byte-identical regardless of the worker count. `GREEDYLAB_THREADS` caps
//! the number of workers.

use std::sync::Mutex;

/// Worker count: min(available parallelism, 8), capped by GREEDYLAB_THREADS.
pub fn worker_count() -> usize {
    let hw = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut n = hw.min(8);
    if let Ok(s) = std::env::var("GREEDYLAB_THREADS") {
        if let Ok(cap) = s.trim().parse::<usize>() {
            if cap >= 1 {
                n = n.min(cap);
            }
        }
    }
    n
}

/// Run `trials` independent computations and return their results in trial
/// order. The closure must be deterministic per trial index.
pub fn map_trials<T, F>(trials: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count().min(trials.max(1));
    if workers <= 1 || trials < 32 {
        return (0..trials).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..trials).map(|_| None).collect();
    let slots = Mutex::new(&mut out);
    let chunk = trials.div_ceil(workers);
    std::thread::scope(|scope| {
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(trials);
            let f = &f;
            let slots = &slots;
            scope.spawn(move || {
                let mut local: Vec<(usize, T)> = Vec::with_capacity(hi.saturating_sub(lo));
                for i in lo..hi {
                    local.push((i, f(i)));
                }
                let mut guard = slots.lock().unwrap();
                for (i, v) in local {
                    guard[i] = Some(v);
                }
            });
        }
    });
    out.into_iter().map(|v| v.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_trial_order() {
        let got = map_trials(100, |i| i * i);
        assert_eq!(got, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn matches_sequential_run() {
        let par = map_trials(64, |i| {
            let mut r = crate::rng::SplitMix64::new(9).fork(i as u64);
            r.next_f64()
        });
        let seq: Vec<f64> = (0..64)
            .map(|i| {
                let mut r = crate::rng::SplitMix64::new(9).fork(i as u64);
                r.next_f64()
            })
            .collect();
        assert_eq!(par, seq);
    }
}
