//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the mapping helpers fan out over a
//! rayon thread pool; without it they degrade to plain sequential loops with
//! identical results.  The explicitly sequential variants are always
//! available so benchmarks can compare both code paths in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Map over a slice, parallel when the `parallel` feature is enabled.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Always-sequential mapping with the same contract as [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
