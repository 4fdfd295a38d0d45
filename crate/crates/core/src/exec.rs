//! Data-parallel helpers with a sequential path.
//!
//! Every helper returns the same result for both strategies; only the
//! scheduling differs. Without the `parallel` feature `Parallel` runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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
    fn parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `f(i)` for every i in 0..n, in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// The result of the smallest index i in 0..n with `f(i)` present.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().filter_map(f).find_first(|_| true);
        }
        (0..n).find_map(f)
    }

    /// Whether `f(i)` holds for some i in 0..n.
    pub fn any<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().any(f);
        }
        (0..n).any(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(exec.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.find_first(100, |i| (i % 7 == 6).then_some(i)), Some(6));
            assert!(exec.any(10, |i| i == 9));
            assert!(!exec.any(10, |i| i == 10));
        }
    }
}
