//! Execution helper for the data-parallel inner loops.
//!
//! Every parallel loop in this crate maps an index range through a pure
//! function and collects the results in index order, so the output is
//! identical whether the `parallel` feature is enabled, disabled, or run
//! on a single-thread pool.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// True when this build executes inner loops on the rayon thread pool.
pub fn parallelism_enabled() -> bool {
    cfg!(feature = "parallel")
}
