//! Order-preserving data-parallel map.
//!
//! With the `parallel` feature the work goes to rayon's global pool.
//! Without it, [`Parallelism::Parallel`] quietly runs sequentially, so
//! callers never need their own `cfg`.

/// How independent jobs are scheduled. Results are identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// `items.iter().map(f)` collected in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Parallelism::Sequential => items.iter().map(f).collect(),
            Parallelism::Parallel => parallel_map(items, f),
        }
    }

    /// Whether jobs really run on a thread pool in this build.
    pub fn is_parallel(self) -> bool {
        self == Parallelism::Parallel && cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    // one item per task: the jobs here are few and uneven
    items.par_iter().with_max_len(1).map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        let items: Vec<u64> = (0..200).collect();
        let f = |x: &u64| x * x + 1;
        let seq = Parallelism::Sequential.map(&items, f);
        assert_eq!(Parallelism::Parallel.map(&items, f), seq);
        assert_eq!(seq[7], 50);
    }
}
