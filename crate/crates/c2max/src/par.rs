//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these fan out over rayon; without
//! it they run plain sequential loops. Results are collected in index order
//! in both modes, so outputs are identical bit for bit.

#[cfg(feature = "parallel")]
pub fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn flat_map_range<R: Send>(n: usize, f: impl Fn(usize) -> Vec<R> + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    (0..n).into_par_iter().flat_map_iter(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn flat_map_range<R>(n: usize, f: impl Fn(usize) -> Vec<R>) -> Vec<R> {
    (0..n).flat_map(f).collect()
}

/// True when the parallel backend is compiled in; used for bench labels.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
