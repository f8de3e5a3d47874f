//! Data-parallel helpers.
//!
//! With the `parallel` feature the exhaustive kernels fan out over rayon's pool;
//! without it every helper degrades to a plain sequential loop with identical
//! results. All reductions used by the crate (min, lexicographic max, set union)
//! are order-independent, so the worker count never changes an answer.

use std::ops::Range;

use crate::error::{Error, Result};

/// Map every index of `range` and fold the results with `reduce`.
///
/// `reduce` must be associative and commutative.
pub fn map_reduce<T, M, R>(range: Range<u64>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        range
            .into_par_iter()
            .map(map)
            .reduce(|| identity.clone(), &reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(map).fold(identity, reduce)
    }
}

/// Apply `f` to every element of `items` in place.
pub fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if items.len() >= 1 << 12 {
            items
                .par_iter_mut()
                .enumerate()
                .for_each(|(i, item)| f(i, item));
            return;
        }
    }
    items
        .iter_mut()
        .enumerate()
        .for_each(|(i, item)| f(i, item));
}

/// Run `f` on a dedicated pool of `workers` threads (sequential builds just call `f`).
pub fn install<T, F>(workers: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be positive".into(),
        ));
    }
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(f())
    }
}

/// Configure the global worker count. Only the first call in a process takes effect.
pub fn set_global_workers(workers: usize) -> Result<()> {
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be positive".into(),
        ));
    }
    #[cfg(feature = "parallel")]
    {
        // an already-initialised global pool is not an error for callers
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    Ok(())
}

/// Number of workers the kernels will use.
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
