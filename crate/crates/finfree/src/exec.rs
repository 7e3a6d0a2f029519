use finfree_core::experiments::TrialExecutor;
use rayon::prelude::*;

/// Runs trials on a dedicated rayon pool. Results come back in trial order,
/// so reports match [`finfree_core::experiments::Sequential`] bit for bit.
pub struct ParallelExecutor {
    pool: rayon::ThreadPool,
}

impl ParallelExecutor {
    /// `jobs = None` or `Some(0)` uses the machine's parallelism.
    pub fn new(jobs: Option<usize>) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()?;
        Ok(Self { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl TrialExecutor for ParallelExecutor {
    fn map<R: Send, F: Fn(usize) -> R + Sync + Send>(&self, count: usize, f: F) -> Vec<R> {
        self.pool
            .install(|| (0..count).into_par_iter().map(f).collect())
    }
}
