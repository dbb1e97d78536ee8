//! Check runner: data-parallel over independent checks when the `parallel`
//! feature is enabled, plain iteration otherwise. Results are collected in
//! index order either way, so reports are byte-identical across modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runtime configuration threaded through the law suites.
#[derive(Clone, Debug)]
pub struct RunCfg {
    pub seed: u64,
    /// Numerical tolerance for the quantum instance.
    pub eps: f64,
    /// Carrier/homset bound for exhaustive checks.
    pub max_size: usize,
    /// Use the thread pool (no effect without the `parallel` feature).
    pub parallel: bool,
}

impl Default for RunCfg {
    fn default() -> Self {
        RunCfg {
            seed: 1,
            eps: 1e-9,
            max_size: 256,
            parallel: true,
        }
    }
}

/// Applies `f` to `0..n` and collects the results in order.
#[cfg(feature = "parallel")]
pub fn run_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_indexed<T, F>(n: usize, _parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice of independent check inputs, in order.
pub fn run_over<I, T, F>(items: &[I], parallel: bool, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    run_indexed(items.len(), parallel, |i| f(&items[i]))
}
