//! Execution strategy for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) large workloads fan out over
//! rayon; without it, or below the work threshold, everything runs
//! sequentially. Callers only pass order-insensitive combining steps
//! (independent per-item outputs, `f64::max`), so results are identical
//! whichever path runs and however many threads rayon uses.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Workloads smaller than this run sequentially even when the `parallel`
/// feature is enabled; forking has a fixed cost. The sequential build keeps
/// the constant so both builds exercise the same test points.
#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
pub(crate) const PARALLEL_WORK_THRESHOLD: usize = 1 << 14;

/// Maps `f` over the items, preserving order. `work` is an estimate of the
/// total scalar operations, used to decide whether to fan out.
#[cfg(feature = "parallel")]
pub(crate) fn map_items<T, U, F>(items: &[T], work: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    if work >= PARALLEL_WORK_THRESHOLD {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_items<T, U, F>(items: &[T], _work: usize, f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maximum of `f` over `0..n`, or negative infinity when `n = 0`. The
/// reduction is a plain `f64::max`, which is associative and commutative,
/// so the parallel split does not affect the result.
#[cfg(feature = "parallel")]
pub(crate) fn max_over<F>(n: usize, work: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    if work >= PARALLEL_WORK_THRESHOLD {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| f64::NEG_INFINITY, f64::max)
    } else {
        (0..n).map(f).fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn max_over<F>(n: usize, _work: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    (0..n).map(f).fold(f64::NEG_INFINITY, f64::max)
}
