//! Size limits for derived carriers.
//!
//! The process-wide limit can be changed with [`set_limit_budget`]; a
//! thread may temporarily override it with [`with_limit_budget`].

use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_LIMIT_BUDGET: usize = 1_000_000;

/// Largest operation table (entries, over all operations of one algebra) we
/// are willing to materialise.
pub const TABLE_BUDGET: usize = 1 << 27;

static LIMIT_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_LIMIT_BUDGET);

thread_local! {
    static OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

/// Maximum number of elements any computed limit carrier may have.
pub fn limit_budget() -> usize {
    OVERRIDE
        .with(|o| o.get())
        .unwrap_or_else(|| LIMIT_BUDGET.load(Ordering::Relaxed))
}

pub fn set_limit_budget(elements: usize) {
    LIMIT_BUDGET.store(elements.max(1), Ordering::Relaxed);
}

/// Runs `f` with the limit budget of the current thread set to `elements`.
pub fn with_limit_budget<T>(elements: usize, f: impl FnOnce() -> T) -> T {
    let prev = OVERRIDE.with(|o| o.replace(Some(elements.max(1))));
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            OVERRIDE.with(|o| o.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}
