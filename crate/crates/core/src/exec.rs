//! Execution strategy for the data-parallel kernels.

/// Chunk length used for parallel splits and for deterministic reductions.
pub(crate) const GRAIN: usize = 1 << 12;

/// Whether a kernel runs on the rayon pool or on the calling thread.
///
/// Without the `parallel` feature `Parallel` silently runs sequentially, so
/// callers never need to cfg-gate their choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    pub(crate) fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Sum `f` over fixed-size chunks of `items`, then add the partial sums in
/// chunk order. The result is bit-identical for sequential and parallel runs.
pub(crate) fn chunked_sum<T, F>(items: &[T], exec: Exec, f: F) -> f64
where
    T: Sync,
    F: Fn(usize, &[T]) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > GRAIN {
        use rayon::prelude::*;
        let partial: Vec<f64> = items
            .par_chunks(GRAIN)
            .enumerate()
            .map(|(c, chunk)| f(c * GRAIN, chunk))
            .collect();
        return partial.iter().sum();
    }
    let _ = exec;
    let partial: Vec<f64> = items
        .chunks(GRAIN)
        .enumerate()
        .map(|(c, chunk)| f(c * GRAIN, chunk))
        .collect();
    partial.iter().sum()
}
