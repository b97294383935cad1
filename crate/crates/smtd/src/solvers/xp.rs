//! Enumeration when the total capacity m·q∞ is small: at most that many
//! students can be matched, so guess the matched set, then the assignment.

use super::brute::with_detail;
use super::{dense_satisfies, finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::{Error, Result};
use crate::model::{Assign, Dense, Instance};
use crate::par;
use crate::verify::for_each_subset;

struct Assigner<'a> {
    d: &'a Dense,
    mode: SolveMode,
    budget: &'a Budget,
}

impl Assigner<'_> {
    /// Assigns `chosen[i..]` to acceptable colleges within capacity and upper quotas.
    fn run(&self, chosen: &[usize], i: usize, a: &mut Assign, counts: &mut [u32], sizes: &mut [u32]) -> Result<bool> {
        self.budget.tick()?;
        if self.budget.stopped() {
            return Ok(false);
        }
        let d = self.d;
        let t = d.t;
        if i == chosen.len() {
            self.budget.checked();
            let lower_ok = (0..d.m).all(|w| (0..t).all(|z| counts[w * t + z] >= d.lower(w)[z]));
            return Ok(lower_ok && dense_satisfies(d, a, self.mode));
        }
        let u = chosen[i];
        for &w in &d.s_acc[u] {
            let tau = d.tau(u);
            if sizes[w] >= d.cap[w] || (0..t).any(|z| counts[w * t + z] + tau[z] as u32 > d.upper(w)[z]) {
                continue;
            }
            (0..t).for_each(|z| counts[w * t + z] += tau[z] as u32);
            sizes[w] += 1;
            a[u] = Some(w);
            if self.run(chosen, i + 1, a, counts, sizes)? {
                return Ok(true);
            }
            a[u] = None;
            sizes[w] -= 1;
            (0..t).for_each(|z| counts[w * t + z] -= tau[z] as u32);
        }
        Ok(false)
    }
}

/// Guesses the set of matched students (by size, then lexicographically) and
/// their colleges. `mode` must be `Feasible` or `Stable`.
pub fn solve_xp_small_capacity(inst: &Instance, mode: SolveMode, opts: &SolveOptions) -> Result<SolveResult> {
    if !matches!(mode, SolveMode::Feasible | SolveMode::Stable) {
        return Err(Error::PreconditionViolated("xp-mq supports the feasible and stable modes only".into()));
    }
    let d = Dense::new(inst)?;
    let budget = Budget::new(opts.budget);
    let max_matched = (d.m as u64 * d.cap_max() as u64).min(d.n as u64) as usize;
    let parallel = opts.parallel();
    let mut found = None;
    for size in 0..=max_matched {
        let mut sets = Vec::new();
        let mut overflow = false;
        for_each_subset(d.n, size, |idx| {
            if idx.len() == size {
                if budget.tick().is_err() {
                    overflow = true;
                    return true;
                }
                sets.push(idx.to_vec());
            }
            false
        });
        if overflow {
            return Err(Error::BudgetExceeded { limit: opts.budget, detail: " (xp-mq)".into() });
        }
        let hit = par::find_map(sets, parallel, true, |chosen| {
            let mut a = vec![None; d.n];
            let mut counts = vec![0; d.m * d.t];
            let mut sizes = vec![0; d.m];
            let s = Assigner { d: &d, mode, budget: &budget };
            match s.run(&chosen, 0, &mut a, &mut counts, &mut sizes) {
                Ok(true) => {
                    budget.halt();
                    Some(Ok(a))
                }
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        });
        if let Some(hit) = hit {
            found = Some(hit.map_err(|e| with_detail(e, " (xp-mq)"))?);
            break;
        }
    }
    let res = finish(&d, found, "xp-mq", &budget, opts);
    verify_result(&d, &res, mode)?;
    Ok(res)
}
