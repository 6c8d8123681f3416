//! Execution strategy for data-parallel scans.
//!
//! All heavy loops in the crate are "embarrassingly parallel" maps over an
//! index range (grid candidates, partition cells, sample nodes). They go
//! through [`Execution::map`], which collects results *in index order*; any
//! reduction is then performed sequentially over that vector. Results are
//! therefore bit-identical whatever the thread count, and identical between
//! the parallel and sequential strategies.
//!
//! With the `parallel` cargo feature disabled, [`Execution::Parallel`]
//! silently degrades to sequential evaluation.

/// How to run an index-parallel map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Plain sequential iteration on the calling thread.
    Sequential,
    /// Rayon work-stealing (sequential when the `parallel` feature is off).
    #[default]
    Parallel,
}

impl Execution {
    /// Evaluates `f(0), …, f(n-1)` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            Execution::Parallel => par_map(n, f),
        }
    }

    /// Whether this strategy actually runs on several threads.
    pub fn is_parallel(self) -> bool {
        self == Execution::Parallel && cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Caps the global worker pool at `threads` threads.
///
/// Must be called before the first parallel scan; later calls (or calls in a
/// build without the `parallel` feature) have no effect and return `false`.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Sum with a fixed pairwise (tree) association order.
///
/// The association order depends only on the slice length, which keeps sums
/// reproducible and limits round-off growth to `O(log n)`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Index and value of the minimum of a slice; ties resolve to the smallest
/// index. NaN entries are never selected. Returns `None` for an empty slice
/// or when every entry is NaN.
pub fn argmin(xs: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in xs.iter().enumerate() {
        if x.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if x >= b => {}
            _ => best = Some((i, x)),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_in_both_modes() {
        let seq = Execution::Sequential.map(1000, |i| i * i);
        let par = Execution::Parallel.map(1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn pairwise_sum_matches_exact_integers() {
        let xs: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn argmin_breaks_ties_to_first_index_and_skips_nan() {
        assert_eq!(argmin(&[3.0, 1.0, 1.0, 2.0]), Some((1, 1.0)));
        assert_eq!(argmin(&[f64::NAN, 2.0]), Some((1, 2.0)));
        assert_eq!(argmin(&[]), None);
    }
}
