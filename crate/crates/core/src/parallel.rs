//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature (default) work is spread with rayon; without it
//! every call runs sequentially. Results always come back in input order, so
//! outputs are identical either way.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `op` with at most `jobs` worker threads. `jobs == 0` uses the global
/// default pool.
pub fn with_jobs<R: Send>(jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(op);
            }
        }
        op()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        op()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map(&xs, Execution::Sequential, |x| x * x);
        let par = map(&xs, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(with_jobs(2, || map(&xs, Execution::Parallel, |x| x + 1))[999], 1000);
    }
}
