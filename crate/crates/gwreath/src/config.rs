//! Resource caps threaded through every construction that can blow up.

/// Hard upper bound on permutation degree; [`RunConfig::degree_cap`] may only
/// lower it.
pub const MAX_DEGREE: usize = 1 << 20;

/// Caps and execution knobs.
///
/// `degree_cap` bounds the size of any configuration space (and hence of any
/// permutation built). `oracle_order_cap` bounds the group orders on which
/// element-by-element brute force is attempted. `memory_budget` bounds the
/// bytes a stabilizer chain may pin for transversals and strong generators;
/// exceeding it is a structured error, not a slow death by swapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub degree_cap: usize,
    pub oracle_order_cap: u64,
    pub memory_budget: u64,
    pub threads: usize,
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            degree_cap: MAX_DEGREE,
            oracle_order_cap: 10_000,
            memory_budget: 2 << 30,
            threads: 1,
            deterministic: true,
        }
    }
}

impl RunConfig {
    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn with_oracle_cap(mut self, cap: u64) -> Self {
        self.oracle_order_cap = cap;
        self
    }

    pub fn with_memory_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}
