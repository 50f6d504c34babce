//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the batch loops in this crate
//! (exhaustive enumeration, restarts, schedules, Monte Carlo sweeps) run on
//! the rayon pool. Without it, or with [`Exec::Sequential`], they run on the
//! calling thread. Both paths produce identical results: outputs are always
//! collected in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

#[allow(clippy::derivable_impls)]
impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Evaluates `f` on `0..n` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        }
    }

    /// Maps over a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    pub fn any<S, F>(self, items: &[S], f: F) -> bool
    where
        S: Sync,
        F: Fn(&S) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().any(f),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().any(f),
        }
    }

    pub fn all<S, F>(self, items: &[S], f: F) -> bool
    where
        S: Sync,
        F: Fn(&S) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().all(f),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().all(f),
        }
    }
}
