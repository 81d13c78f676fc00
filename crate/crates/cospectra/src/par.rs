//! Thin indirection over rayon so every pipeline keeps a sequential
//! fallback when the `parallel` feature is disabled. Results preserve
//! input order, so output is identical across worker counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over items, in parallel when available. Output order matches
/// input order.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential map, kept as the benchmark baseline.
pub fn map_ordered_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Run `job` on a pool with the requested worker count. With one worker or
/// without the parallel feature the job runs on the current thread.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: usize, job: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(job)
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R>(_workers: usize, job: impl FnOnce() -> R) -> R {
    job()
}
