//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature, [`Execution::Parallel`] maps over index ranges
//! with rayon. Results are always collected in index order and reduced
//! sequentially by the caller, so both modes produce bitwise-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this mode actually runs on the thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Evaluates `f` on `0..n`, returning results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Ordered sum of `f(i)` over `0..n`. The summation order does not depend
    /// on the execution mode.
    pub fn sum(self, n: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
        self.map(n, f).into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_bitwise() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let a = Execution::Sequential.sum(10_000, f);
        let b = Execution::Parallel.sum(10_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(Execution::Parallel.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
