//! Deterministic data-parallel reduction.
//!
//! Quadratures are embarrassingly parallel over cells. To keep results
//! bit-stable at a fixed worker count, the index range is split into one
//! contiguous chunk per worker and the partial sums are combined in chunk
//! order; the grouping (and hence the float result) depends only on
//! `workers`, never on scheduling.

use std::ops::Range;

/// Σ of `partial` over `0..n` split into `workers` ordered chunks.
pub fn chunked_sum<F>(n: usize, workers: usize, partial: F) -> f64
where
    F: Fn(Range<usize>) -> f64 + Sync,
{
    let workers = workers.max(1).min(n.max(1));
    if workers == 1 {
        return partial(0..n);
    }
    let chunk = n.div_ceil(workers);
    let ranges: Vec<Range<usize>> = (0..workers)
        .map(|w| (w * chunk).min(n)..((w + 1) * chunk).min(n))
        .collect();
    let mut partials = vec![0.0; ranges.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for r in &ranges {
            let partial = &partial;
            handles.push(scope.spawn(move || partial(r.clone())));
        }
        for (slot, h) in partials.iter_mut().zip(handles) {
            *slot = h.join().expect("quadrature worker panicked");
        }
    });
    // fixed-order reduction
    partials.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_serial_sum() {
        let f = |r: Range<usize>| r.map(|i| (i as f64).sqrt()).sum::<f64>();
        let serial = chunked_sum(10_000, 1, f);
        for workers in [2, 3, 7] {
            let par = chunked_sum(10_000, workers, f);
            assert!((par - serial).abs() < 1e-9);
        }
    }

    #[test]
    fn bit_stable_at_fixed_worker_count() {
        let f = |r: Range<usize>| r.map(|i| 1.0 / (1.0 + i as f64)).sum::<f64>();
        let a = chunked_sum(5000, 4, f);
        let b = chunked_sum(5000, 4, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn empty_range() {
        assert_eq!(chunked_sum(0, 4, |r| r.len() as f64), 0.0);
    }
}
