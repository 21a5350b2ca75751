//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on
//! the rayon global pool; without it every mode runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

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
    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Map then fold with an associative `combine`.
    pub fn map_reduce<T, R, F, C>(self, items: &[T], identity: impl Fn() -> R + Sync + Send, f: F, combine: C) -> R
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).reduce(&identity, &combine),
            _ => items.iter().map(f).fold(identity(), combine),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        let s = Exec::Parallel.map_reduce(&xs, || 0, |x| *x, |a, b| a + b);
        assert_eq!(s, 499_500);
    }
}
