//! Exact solvers: brute force, the few-students kernel, enumeration for small
//! total capacity, the worst-student DP for few colleges and types, branching
//! for instances without lower quotas, and the ILP for plain feasibility.

mod auto;
mod brute;
mod dp;
mod few_students;
mod gs;
mod ilp;
mod kernel;
mod xp;

pub use auto::solve_auto;
pub use brute::{enumerate_feasible, solve_bruteforce};
pub(crate) use brute::dense_enumerate_feasible;
pub use dp::{solve_dp_detailed, solve_dp_few_colleges_types, DpBranch, DpRecord};
pub use few_students::solve_few_students;
pub use gs::solve_gs_branching;
pub use ilp::{build_ilp, solve_ilp_feasible, IlpModel, IlpRow, IlpVar, Sense};
pub use kernel::{kernelize_few_students, Kernel};
pub use xp::solve_xp_small_capacity;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Dense, Matching};
use crate::verify::{dense_find_blocking, dense_find_coalition, StabilityMode, Strategy};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    Feasible,
    Stable,
    DStable,
    CStable,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Maximum number of search nodes / checked assignments.
    pub budget: u64,
    /// Split the top-level branch space across the worker pool.
    pub parallel: bool,
    /// Return the canonical-order-least answer; forces a single worker.
    pub canonical: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, parallel: crate::par::ENABLED, canonical: false }
    }
}

impl SolveOptions {
    /// Defaults, with the budget taken from `SMTD_BUDGET` when set.
    pub fn from_env() -> Self {
        let budget = std::env::var("SMTD_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);
        SolveOptions { budget, ..Default::default() }
    }

    pub fn sequential() -> Self {
        SolveOptions { parallel: false, ..Default::default() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub(crate) fn parallel(&self) -> bool {
        self.parallel && !self.canonical
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    /// Search nodes visited.
    pub branches: u64,
    /// Complete candidate matchings verified.
    pub matchings_checked: u64,
    /// Wall time; omitted for canonical runs so output stays reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    pub status: Status,
    pub matching: Option<Matching>,
    pub algorithm: String,
    pub stats: Stats,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }
}

/// Shared step counter and stop flag for one solver run.
pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
    checked: AtomicU64,
    stop: AtomicBool,
    start: Instant,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            checked: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            start: Instant::now(),
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit, detail: String::new() });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn checked(&self) {
        self.checked.fetch_add(1, Ordering::Relaxed);
    }

    /// Another worker already found an answer.
    #[inline]
    pub(crate) fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub(crate) fn halt(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    pub(crate) fn stats(&self, canonical: bool) -> Stats {
        Stats {
            branches: self.used.load(Ordering::Relaxed).min(self.limit),
            matchings_checked: self.checked.load(Ordering::Relaxed),
            elapsed_ms: (!canonical).then(|| self.start.elapsed().as_secs_f64() * 1e3),
        }
    }
}

pub(crate) fn finish(
    d: &Dense,
    found: Option<Vec<Option<usize>>>,
    algorithm: &str,
    budget: &Budget,
    opts: &SolveOptions,
) -> SolveResult {
    SolveResult {
        status: if found.is_some() { Status::Yes } else { Status::No },
        matching: found.map(|a| d.matching_of(&a)),
        algorithm: algorithm.to_string(),
        stats: budget.stats(opts.canonical),
        warnings: Vec::new(),
    }
}

/// Whether the assignment is feasible and stable under `mode`.
pub(crate) fn dense_satisfies(d: &Dense, a: &[Option<usize>], mode: SolveMode) -> bool {
    if !d.is_feasible(a) {
        return false;
    }
    match mode {
        SolveMode::Feasible => true,
        SolveMode::Stable => dense_find_blocking(d, a, StabilityMode::Strict, Strategy::Exhaustive).is_none(),
        SolveMode::DStable => dense_find_blocking(d, a, StabilityMode::DBlocking, Strategy::Exhaustive).is_none(),
        SolveMode::CStable => dense_find_coalition(d, a).is_none(),
    }
}

/// Re-checks a solver's answer before it is handed out.
pub(crate) fn verify_result(d: &Dense, res: &SolveResult, mode: SolveMode) -> Result<()> {
    let Some(m) = &res.matching else { return Ok(()) };
    let a = d.assign_of(m)?;
    if !d.is_feasible(&a) {
        return Err(Error::VerificationFailed(format!("{} returned an infeasible matching", res.algorithm)));
    }
    // the restricted search is complete for feasible matchings and much cheaper on large colleges
    let strategy = if d.members(&a).iter().all(|s| s.len() <= 12) { Strategy::Exhaustive } else { Strategy::Restricted };
    let ok = match mode {
        SolveMode::Feasible => true,
        SolveMode::Stable => dense_find_blocking(d, &a, StabilityMode::Strict, strategy).is_none(),
        SolveMode::DStable => dense_find_blocking(d, &a, StabilityMode::DBlocking, strategy).is_none(),
        SolveMode::CStable => dense_find_coalition(d, &a).is_none(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!("{} returned a blocked matching", res.algorithm)))
    }
}
