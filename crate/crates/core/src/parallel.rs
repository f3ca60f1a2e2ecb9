//! Thin dispatch layer between rayon and the sequential fallback.
//!
//! Every parallel loop in the crate is expressed through these helpers so
//! that the `parallel` feature toggles the execution strategy without
//! touching call sites. Reductions are block-structured: callers split work
//! into fixed blocks and combine block results in index order, which keeps
//! floating-point output identical across thread counts and identical to
//! the sequential build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` collecting results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential variant of [`map_indexed`], always available (benchmarks
/// compare the two directly).
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
