//! Execution-mode switch and order-preserving map helpers.
//!
//! Every parallel helper returns exactly what the sequential loop would:
//! maps collect in index order and searches report the lowest matching
//! index. With the `parallel` feature disabled both modes run sequentially.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Sets the process-wide default used by operations that do not take an
/// explicit mode.
pub fn set_mode(mode: ExecMode) {
    MODE.store(if mode == ExecMode::Sequential { 0 } else { 1 }, Ordering::Relaxed);
}

pub fn mode() -> ExecMode {
    if MODE.load(Ordering::Relaxed) == 0 {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    }
}

/// Maps `f` over `0..n` preserving index order.
pub fn map_range<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

/// Lowest index in `0..n` satisfying `f`, identical to the sequential scan.
pub fn find_lowest<F>(mode: ExecMode, n: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_first(|&i| f(i));
    }
    let _ = mode;
    (0..n).find(|&i| f(i))
}

/// Whether `f` holds on all of `0..n`.
pub fn all<F>(mode: ExecMode, n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_lowest(mode, n, |i| !f(i)).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let sq = |i: usize| i * i;
        assert_eq!(map_range(ExecMode::Parallel, 100, sq), map_range(ExecMode::Sequential, 100, sq));
        let p = |i: usize| i > 40 && i % 7 == 0;
        assert_eq!(find_lowest(ExecMode::Parallel, 100, p), Some(42));
        assert_eq!(find_lowest(ExecMode::Sequential, 100, p), Some(42));
        assert!(all(ExecMode::Parallel, 10, |i| i < 10));
        assert!(!all(ExecMode::Parallel, 11, |i| i < 10));
    }
}
