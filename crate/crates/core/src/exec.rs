//! Execution mode switch for the data-parallel loops.
//!
//! With the `parallel` feature the loops run on rayon; without it, or when a
//! caller asks for [`Execution::Sequential`], they run on the current thread.
//! Both paths return results in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `true` when this mode will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map_collect<T, R, F>(mode: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

pub fn filter_map_collect<T, R, F>(mode: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().filter_map(f).collect();
    }
    let _ = mode;
    items.iter().filter_map(f).collect()
}

pub fn all<T, F>(mode: Execution, items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().all(f);
    }
    let _ = mode;
    items.iter().all(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map_collect(Execution::Sequential, &xs, |x| x * x);
        let b = map_collect(Execution::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        let odd = |x: &u64| (x % 2 == 1).then_some(*x);
        assert_eq!(
            filter_map_collect(Execution::Sequential, &xs, odd),
            filter_map_collect(Execution::Parallel, &xs, odd)
        );
        assert!(all(Execution::Parallel, &xs, |x| *x < 1000));
    }
}
