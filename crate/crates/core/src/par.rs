//! Data-parallel helpers. With the `parallel` feature disabled every
//! execution mode runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep or scan distributes its independent work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread across threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..len`.
pub fn map_range<R, F>(len: usize, exec: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Smallest index in `0..len` satisfying `pred`.
pub fn find_first<F>(len: usize, exec: Execution, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..len).find(|&i| pred(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_slice(&items, Execution::Sequential, |x| x * x);
        let b = map_slice(&items, Execution::Parallel, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(
            map_range(50, Execution::Parallel, |i| i + 1),
            map_range(50, Execution::Sequential, |i| i + 1)
        );
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(find_first(1000, exec, |i| i % 97 == 96), Some(96));
            assert_eq!(find_first(10, exec, |_| false), None);
        }
    }
}
