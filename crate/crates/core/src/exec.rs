//! Runtime switch between the rayon-backed scans and the sequential
//! fallback.
//!
//! With the `parallel` feature disabled the fallback is the only
//! implementation. With it enabled, [`set_sequential_scans`] forces the
//! sequential path at runtime, which the benchmark suite uses to compare
//! the two on identical builds.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces all internal enumeration loops onto the sequential code path.
///
/// Outputs are identical either way; only the schedule changes.
pub fn set_sequential_scans(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::Relaxed);
}

pub(crate) fn sequential_scans() -> bool {
    cfg!(not(feature = "parallel")) || FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Maps `f` over `items`, in parallel when allowed, preserving order.
pub(crate) fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_scans() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}
