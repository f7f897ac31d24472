//! Data-parallel execution with a sequential fallback.
//!
//! Every parallel path here is an order-preserving map: each output element is
//! computed independently and reductions happen afterwards in index order, so
//! results are bitwise identical for either execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Uses the current rayon pool when the `parallel` feature is enabled,
    /// otherwise identical to `Sequential`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Fills `out` in chunks of `chunk` elements; `f` receives the chunk index.
    pub fn for_each_chunk<R, F>(self, out: &mut [R], chunk: usize, f: F)
    where
        R: Send,
        F: Fn(usize, &mut [R]) + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => out.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c)),
            _ => out.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c)),
        }
    }
}
