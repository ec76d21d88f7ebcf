//! Worker-pool sizing from `EDIMLAB_THREADS`.

use crate::config::THREADS_ENV;

/// Worker cap from the environment; `None` means automatic.
pub fn worker_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
}

/// Runs `f` inside a pool honoring [`worker_cap`].
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match worker_cap() {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
