//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on rayon's pool; without it, or
//! after `set_parallel(false)`, they run on the calling thread. Results never
//! depend on which path ran: every reduction used here is associative and
//! commutative (integer and exact-rational addition, histogram merges).

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Turns the parallel path on or off at runtime (no-op without the feature).
pub fn set_parallel(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

/// `items.map(f).fold(identity, reduce)`, split across workers when enabled.
pub fn map_reduce<T, A, F, I, R>(items: Vec<T>, f: F, identity: I, reduce: R) -> A
where
    T: Send,
    A: Send,
    F: Fn(T) -> A + Sync + Send,
    I: Fn() -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return items
                .into_par_iter()
                .map(&f)
                .reduce(&identity, &reduce);
        }
    }
    items.into_iter().map(f).fold(identity(), reduce)
}

/// Order-preserving parallel map.
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}
