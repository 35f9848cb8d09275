//! Batch execution of independent, slot-indexed jobs.
//!
//! Results always come back in slot order, so any reduction over them is
//! deterministic regardless of which worker finished first. Without the
//! `parallel` feature, [`Execution::Parallel`] runs sequentially.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether `Parallel` actually uses worker threads in this build.
    pub const fn threads_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Evaluates `job(0), job(1), ..., job(len - 1)` and returns the
    /// results in index order.
    pub fn map<T, F>(self, len: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..len).map(job).collect(),
            Execution::Parallel => par_map(len, job),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(len: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(job).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(len: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(job).collect()
}
