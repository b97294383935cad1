//! Feasibility and stability checks: blocking pairs (strict and d-blocking),
//! the zero-lower-quota fast path, and blocking coalitions.

mod blocking;
mod coalition;
mod feasible;
mod zero_lower;

pub use blocking::{
    dense_find_blocking, dense_pair_witness, find_blocking_pair, pair_witness, witness_valid, worst_sets,
    Profile, WorstSet,
};
pub use coalition::{dense_find_coalition, find_blocking_coalition};
pub use feasible::{check_feasible, FeasibilityReport, FeasibilityViolation, ViolationBound};
pub use zero_lower::{dense_zero_lower, is_stable_zero_lower};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Strict,
    DBlocking,
    Coalition,
}

/// Evidence that a matching is unstable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCertificate {
    pub kind: CertKind,
    /// Absent for coalitions.
    pub student: Option<String>,
    pub college: String,
    /// Students displaced from `college` (sorted by id), or for a coalition
    /// the replacement set ordered by the college's preference.
    pub witness: Vec<String>,
}

/// Which swap feasibility a blocking pair must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityMode {
    /// Only the receiving college must stay feasible.
    Strict,
    /// Every college must stay feasible after the swap.
    DBlocking,
}

/// Witness search space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// At most one displaced student per type vector, taken from the worst set.
    Restricted,
    /// Every subset of the strictly worse assignees.
    Exhaustive,
}

/// Lexicographic k-subsets of `0..len`, for k = 0, 1, …, `max_k`.
pub(crate) fn for_each_subset<F>(len: usize, max_k: usize, mut f: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let mut idx = Vec::with_capacity(len);
    for k in 0..=max_k.min(len) {
        idx.clear();
        idx.extend(0..k);
        loop {
            if f(&idx) {
                return true;
            }
            // rightmost position that can still move
            let mut i = k;
            while i > 0 && idx[i - 1] == len - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}
