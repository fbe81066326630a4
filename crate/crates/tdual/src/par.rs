//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool; the environment variable `COURANT_TDUAL_THREADS` caps its size.
//! Without the feature everything runs on the calling thread.

/// Environment variable limiting the number of worker threads.
pub const THREADS_VAR: &str = "COURANT_TDUAL_THREADS";

/// The thread cap requested through [`THREADS_VAR`], if any.
pub fn requested_threads() -> Option<usize> {
    std::env::var(THREADS_VAR).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

#[cfg(feature = "parallel")]
mod imp {
    use std::sync::OnceLock;

    use rayon::prelude::*;

    fn pool() -> &'static rayon::ThreadPool {
        static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
        POOL.get_or_init(|| {
            let mut builder = rayon::ThreadPoolBuilder::new().thread_name(|i| format!("tdual-{i}"));
            if let Some(n) = super::requested_threads() {
                builder = builder.num_threads(n);
            }
            builder.build().expect("failed to start the worker pool")
        })
    }

    pub fn threads() -> usize {
        pool().current_num_threads()
    }

    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        pool().install(|| items.par_iter().map(&f).collect())
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn threads() -> usize {
        1
    }

    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        super::map_sequential(items, f)
    }
}

/// Number of threads [`map`] may use.
pub fn threads() -> usize {
    imp::threads()
}

/// `items.map(f)`, in parallel when the feature is enabled. Output order matches input order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    imp::map(items, f)
}

/// `items.map(f)` on the calling thread.
pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..200).collect();
        let square = |x: &u64| x * x;
        assert_eq!(map(&items, square), map_sequential(&items, square));
        assert!(threads() >= 1);
    }
}
