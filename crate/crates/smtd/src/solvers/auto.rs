//! Picks an exact solver from the instance parameters.

use super::{
    solve_bruteforce, solve_dp_few_colleges_types, solve_few_students, solve_gs_branching, solve_ilp_feasible,
    solve_xp_small_capacity, SolveMode, SolveOptions, SolveResult,
};
use crate::error::{Error, Result};
use crate::model::Instance;

pub const FEW_STUDENTS_MAX: usize = 8;
pub const SMALL_CAPACITY_MAX: u64 = 12;
pub const DP_WEIGHT_MAX: u64 = 24;

/// Dispatches on the mode and parameters; falls back to brute force (with a
/// warning) when no parameter is small. Answers are always re-verified by the
/// chosen solver.
pub fn solve_auto(inst: &Instance, mode: SolveMode, opts: &SolveOptions) -> Result<SolveResult> {
    let n = inst.n();
    let m = inst.m() as u64;
    let t = inst.num_types as u32;
    let mq = m * inst.capacity_max() as u64;
    let dp_weight = if t < 20 { m.saturating_mul(1 << t) } else { u64::MAX };
    match mode {
        SolveMode::Feasible => return solve_ilp_feasible(inst, opts),
        SolveMode::DStable | SolveMode::CStable => return solve_bruteforce(inst, mode, opts),
        SolveMode::Stable => {}
    }
    if inst.lower_max() == 0 && !inst.has_ties() && mq <= SMALL_CAPACITY_MAX {
        return solve_gs_branching(inst, opts);
    }
    if n <= FEW_STUDENTS_MAX {
        return solve_few_students(inst, opts);
    }
    if mq <= SMALL_CAPACITY_MAX {
        return solve_xp_small_capacity(inst, mode, opts);
    }
    if dp_weight <= DP_WEIGHT_MAX {
        return solve_dp_few_colleges_types(inst, opts);
    }
    let warning = format!(
        "no parameter is small (n = {n} > {FEW_STUDENTS_MAX}, m·q∞ = {mq} > {SMALL_CAPACITY_MAX}, \
         m·2^t > {DP_WEIGHT_MAX}); using brute force"
    );
    match solve_bruteforce(inst, mode, opts) {
        Ok(mut r) => {
            r.warnings.push(warning);
            Ok(r)
        }
        Err(Error::BudgetExceeded { limit, detail }) => {
            Err(Error::BudgetExceeded { limit, detail: format!("{detail}; {warning}") })
        }
        Err(e) => Err(e),
    }
}
