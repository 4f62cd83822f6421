//! Execution-mode dispatch for the data-parallel kernels.
//!
//! Hot entry points take a [`Mode`]; `Mode::default()` is `Parallel` when the
//! `parallel` feature is enabled and `Sequential` otherwise. With the feature
//! disabled, `Parallel` silently runs the sequential code path, so a build
//! without rayon keeps the full API.

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    Sequential,
    Parallel,
}

impl Default for Mode {
    fn default() -> Mode {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// Map a function over items, preserving order.
pub fn map_vec<T, R, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}

/// `true` once all items satisfy the predicate.
pub fn all<T, F>(mode: Mode, items: Vec<T>, f: F) -> bool
where
    T: Send,
    F: Fn(T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().all(f);
        }
    }
    let _ = mode;
    items.into_iter().all(f)
}
