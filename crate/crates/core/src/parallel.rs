//! Data-parallel map over an index range.
//!
//! With the `parallel` feature, work is split statically across a dedicated
//! rayon pool: worker `w` handles indices `w, w + W, w + 2W, ...`. The
//! interleaving balances sweeps whose cost grows along the index. Without
//! the feature everything runs on the calling thread. Results always come
//! back in index order.

/// How a sweep is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel { workers: usize },
}

impl Execution {
    /// `Parallel` with `workers` threads when the feature is compiled in and
    /// more than one worker is requested, otherwise `Sequential`.
    pub fn with_workers(workers: usize) -> Self {
        if cfg!(feature = "parallel") && workers > 1 {
            Execution::Parallel { workers }
        } else {
            Execution::Sequential
        }
    }

    pub fn workers(&self) -> usize {
        match *self {
            Execution::Sequential => 1,
            Execution::Parallel { workers } => workers,
        }
    }
}

pub fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Number of hardware threads, used as the default worker count.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn map_indexed<U, F>(count: usize, exec: Execution, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        Execution::Parallel { workers } => parallel_map_indexed(count, workers.max(1), f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map_indexed<U, F>(count: usize, workers: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;

    let run = || {
        let chunks: Vec<Vec<(usize, U)>> = (0..workers)
            .into_par_iter()
            .map(|w| (w..count).step_by(workers).map(|i| (i, f(i))).collect())
            .collect();
        let mut slots: Vec<Option<U>> = std::iter::repeat_with(|| None).take(count).collect();
        for (i, u) in chunks.into_iter().flatten() {
            slots[i] = Some(u);
        }
        slots.into_iter().map(|u| u.expect("every index is assigned")).collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map_indexed<U, F>(count: usize, _workers: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..count).map(f).collect()
}
