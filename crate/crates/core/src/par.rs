//! Chunked data-parallel map with a sequential fallback.
//!
//! `workers == 0` means "let rayon decide", `workers == 1` runs on the calling
//! thread, anything else builds a dedicated pool of that size. Without the
//! `parallel` feature every call is sequential. Output order always follows
//! the chunk index, which is what keeps reductions bit-identical.

/// Fixed chunk length used by all samplers.
pub const CHUNK: usize = 4096;

/// Number of `CHUNK`-sized work items covering `total` samples.
pub fn chunk_count(total: usize) -> usize {
    total.div_ceil(CHUNK)
}

/// Sample range `[start, end)` of chunk `index` out of `total` samples.
pub fn chunk_bounds(index: usize, total: usize) -> (usize, usize) {
    let start = index * CHUNK;
    (start, (start + CHUNK).min(total))
}

/// Applies `f` to `0..n_items` and returns the results in index order.
pub fn map_indexed<T, F>(n_items: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != 1 && n_items > 1 {
        use rayon::prelude::*;
        let run = || (0..n_items).into_par_iter().map(&f).collect::<Vec<T>>();
        if workers == 0 {
            return run();
        }
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
        {
            return pool.install(run);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    (0..n_items).map(f).collect()
}
