//! Index-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over a rayon pool;
//! without it every [`Execution`] runs on the calling thread. Results come
//! back in index order either way, so outputs never depend on scheduling.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Rayon pool; `workers: None` uses the global pool.
    #[default]
    Parallel,
}

/// `(0..len).map(f)` collected in order, failing on the first error by index.
pub fn try_map_indexed<T, F>(exec: Execution, workers: Option<usize>, len: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..len).map(f).collect(),
        Execution::Parallel => parallel_map(workers, len, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(workers: Option<usize>, len: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..len).into_par_iter().map(&f).collect::<Result<Vec<T>>>();
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| crate::error::Error::Config(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(_workers: Option<usize>, len: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let f = |i: usize| Ok(i * i);
        let a = try_map_indexed(Execution::Sequential, None, 100, f).unwrap();
        let b = try_map_indexed(Execution::Parallel, Some(2), 100, f).unwrap();
        assert_eq!(a, b);
    }
}
