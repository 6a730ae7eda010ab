//! Execution-mode switch for the exhaustive checks.
//!
//! The heavy sweeps (degree monotonicity, factorization search, morphism
//! enumeration) are embarrassingly parallel over an index range. With the
//! `parallel` feature they run on rayon; the sequential path is always
//! compiled in so the two can be benchmarked against each other. Both paths
//! collect in index order, so reports come out identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        ExecMode::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        ExecMode::Sequential
    }
}

impl ExecMode {
    pub fn label(self) -> &'static str {
        match self {
            ExecMode::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            ExecMode::Parallel => "parallel",
        }
    }
}

/// `filter_map` over `0..n`, preserving index order in the result.
pub fn filter_map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).filter_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().filter_map(f).collect(),
    }
}

/// `flat_map` over `0..n`, preserving index order in the result.
pub fn flat_map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).flat_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().flat_map_iter(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let f = |i: usize| if i % 3 != 0 { Some(i * i) } else { None };
        let seq = filter_map_indexed(ExecMode::Sequential, 100, f);
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
        #[cfg(feature = "parallel")]
        {
            let par = filter_map_indexed(ExecMode::Parallel, 100, f);
            assert_eq!(seq, par);
        }
    }
}
