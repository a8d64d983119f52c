//! Sequential or data-parallel execution of independent batch items.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon pool; without it every mode runs sequentially. Results are always
//! returned in input order, so output does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn map<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().all(f),
            _ => (0..n).all(f),
        }
    }

    pub fn sum<F>(self, n: usize, f: F) -> usize
    where
        F: Fn(usize) -> usize + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).sum(),
            _ => (0..n).map(f).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: usize| i * i % 7;
        assert_eq!(Execution::Sequential.map(100, f), Execution::Parallel.map(100, f));
        assert_eq!(Execution::Sequential.sum(100, f), Execution::Parallel.sum(100, f));
        assert!(Execution::Parallel.all(50, |i| i < 50));
    }
}
