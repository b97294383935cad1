//! Dynamic program for few colleges and few types.
//!
//! Capacities are encoded as an extra type held by every student. A branch
//! guesses, per college, its final per-type counts and one worst assignee per
//! type vector (or none). Given a branch, whether a student may go to a college
//! (or stay unmatched) depends only on the branch, so partial matchings can be
//! merged by their count matrix.

use std::collections::{BTreeSet, HashSet};

use super::brute::with_detail;
use super::{finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::Result;
use crate::model::{Assign, Dense, Instance, TypeVector};
use crate::par;
use crate::verify::for_each_subset;

/// One college's guess: per-type counts (capacity type last) and, per type
/// vector occurring in A(w), a worst assignee or none.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Profile {
    counts: Vec<u32>,
    wst: Vec<Option<usize>>,
}

/// The guesses of an accepted branch.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DpBranch {
    /// (college, type vector without the capacity type, worst student or none).
    pub wst: Vec<(String, String, Option<String>)>,
    /// (college, type index, count); index `num_types` is the capacity type.
    pub counts: Vec<(String, usize, u32)>,
    /// Count matrix of the accepted final state.
    pub record: DpRecord,
}

/// (m+1) × (t+1) count matrix: per college (last row: unmatched) the per-type
/// counts, last column the number of students.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DpRecord {
    pub q: Vec<Vec<u32>>,
}

fn augment(inst: &Instance) -> Instance {
    let mut a = inst.clone();
    a.num_types += 1;
    for s in &mut a.students {
        let mut bits = s.types.bits().to_vec();
        bits.push(true);
        s.types = TypeVector::from_bits(bits);
    }
    for c in &mut a.colleges {
        c.lower.0.push(0);
        c.upper.0.push(c.capacity);
    }
    a
}

/// DP state: count vector, parent index in the previous layer, college
/// given to the student of this layer (`None`: unmatched).
type State = (Vec<u32>, usize, Option<usize>);

struct Dp<'a> {
    d: &'a Dense,
    budget: &'a Budget,
    /// Distinct type vectors among A(w), per college.
    classes: Vec<Vec<Vec<u8>>>,
    /// class index of student u at college w (if acceptable).
    class_of: Vec<Vec<Option<usize>>>,
    profiles: Vec<Vec<Profile>>,
}

impl<'a> Dp<'a> {
    fn new(d: &'a Dense, budget: &'a Budget) -> Result<Self> {
        let mut classes = Vec::with_capacity(d.m);
        let mut class_of = vec![vec![None; d.m]; d.n];
        for w in 0..d.m {
            let mut cl: Vec<Vec<u8>> = d.c_acc[w].iter().map(|&u| d.tau(u).to_vec()).collect();
            cl.sort();
            cl.dedup();
            for &u in &d.c_acc[w] {
                class_of[u][w] = cl.iter().position(|c| c.as_slice() == d.tau(u));
            }
            classes.push(cl);
        }
        let mut dp = Dp { d, budget, classes, class_of, profiles: Vec::new() };
        dp.profiles = (0..d.m).map(|w| dp.realizable(w)).collect::<Result<_>>()?;
        Ok(dp)
    }

    /// Every (counts, worst-per-class) pair realized by some feasible assignee set.
    fn realizable(&self, w: usize) -> Result<Vec<Profile>> {
        let d = self.d;
        let acc = &d.c_acc[w];
        let mut out = BTreeSet::new();
        let mut err = None;
        for_each_subset(acc.len(), d.cap[w] as usize, |idx| {
            if let Err(e) = self.budget.tick() {
                err = Some(e);
                return true;
            }
            let set: Vec<usize> = idx.iter().map(|&i| acc[i]).collect();
            let counts = d.type_sum(set.iter().copied());
            if !d.fits(w, &counts, set.len()) {
                return false;
            }
            // worst members per class; each choice yields a profile
            let options: Vec<Vec<Option<usize>>> = (0..self.classes[w].len())
                .map(|k| {
                    let of: Vec<usize> = set.iter().copied().filter(|&u| self.class_of[u][w] == Some(k)).collect();
                    match of.iter().map(|&u| d.crank(w, u)).max() {
                        None => vec![None],
                        Some(r) => of.into_iter().filter(|&u| d.crank(w, u) == r).map(Some).collect(),
                    }
                })
                .collect();
            let mut pick = vec![0usize; options.len()];
            loop {
                out.insert(Profile { counts: counts.clone(), wst: pick.iter().zip(&options).map(|(&i, o)| o[i]).collect() });
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < options[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
            false
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out.into_iter().collect()),
        }
    }

    /// Whether student u (not assigned to w2) would form a blocking pair with
    /// w2 under profile p: some subset S of w2's guessed worst students, all
    /// strictly worse than u, can be swapped for u within w2's quotas.
    fn blocks(&self, u: usize, w2: usize, p: &Profile) -> bool {
        let d = self.d;
        let cand: Vec<usize> = p.wst.iter().flatten().copied().filter(|&s| d.c_prefers(w2, u, s)).collect();
        let tau_u = d.tau(u);
        for_each_subset(cand.len(), d.t, |idx| {
            (0..d.t).all(|z| {
                let removed: u32 = idx.iter().map(|&i| d.tau(cand[i])[z] as u32).sum();
                let c = p.counts[z] + tau_u[z] as u32;
                c >= removed && {
                    let c = c - removed;
                    c >= d.lower(w2)[z] && c <= d.upper(w2)[z]
                }
            })
        })
    }

    /// Seeded worst students of college j against the earlier colleges, and
    /// their seeded students against college j.
    fn seeds_ok(&self, chosen: &[usize], j: usize) -> bool {
        let d = self.d;
        let pj = &self.profiles[j][chosen[j]];
        for w in 0..j {
            let pw = &self.profiles[w][chosen[w]];
            for &u in pj.wst.iter().flatten() {
                if d.accepts(u, w) && d.s_prefers(u, Some(w), Some(j)) && self.blocks(u, w, pw) {
                    return false;
                }
            }
            for &u in pw.wst.iter().flatten() {
                if d.accepts(u, j) && d.s_prefers(u, Some(j), Some(w)) && self.blocks(u, j, pj) {
                    return false;
                }
            }
        }
        true
    }

    /// Extends a partial branch college by college.
    fn branch(&self, chosen: &mut Vec<usize>, used: &mut [bool]) -> Result<Option<(Assign, Vec<usize>)>> {
        self.budget.tick()?;
        if self.budget.stopped() {
            return Ok(None);
        }
        let j = chosen.len();
        if j == self.d.m {
            let picked: Vec<&Profile> = chosen.iter().enumerate().map(|(w, &i)| &self.profiles[w][i]).collect();
            return Ok(self.run_dp(&picked)?.map(|a| (a, chosen.clone())));
        }
        for (i, p) in self.profiles[j].iter().enumerate() {
            if p.wst.iter().flatten().any(|&u| used[u]) {
                continue;
            }
            chosen.push(i);
            if self.seeds_ok(chosen, j) {
                p.wst.iter().flatten().for_each(|&u| used[u] = true);
                let r = self.branch(chosen, used)?;
                p.wst.iter().flatten().for_each(|&u| used[u] = false);
                if r.is_some() {
                    chosen.pop();
                    return Ok(r);
                }
            }
            chosen.pop();
        }
        Ok(None)
    }

    /// Layered DP over the non-seeded students for a complete branch.
    fn run_dp(&self, chosen: &[&Profile]) -> Result<Option<Assign>> {
        let d = self.d;
        let (n, m, t) = (d.n, d.m, d.t);
        let mut seeded = vec![None; n];
        let mut q0 = vec![0u32; m * t];
        for (w, p) in chosen.iter().enumerate() {
            for &u in p.wst.iter().flatten() {
                seeded[u] = Some(w);
                (0..t).for_each(|z| q0[w * t + z] += d.tau(u)[z] as u32);
            }
        }
        // options per free student: real colleges passing (a) and (b), and ⊥ passing (b)
        let mut opts: Vec<(usize, Vec<Option<usize>>)> = Vec::new();
        for u in 0..n {
            if seeded[u].is_some() {
                continue;
            }
            let mut o = Vec::new();
            for &w in d.s_acc[u].iter().chain(std::iter::once(&usize::MAX)) {
                let target = (w != usize::MAX).then_some(w);
                if let Some(w) = target {
                    let k = self.class_of[u][w].expect("acceptable student has a class");
                    match chosen[w].wst[k] {
                        Some(s) if d.crank(w, u) <= d.crank(w, s) => {}
                        _ => continue,
                    }
                }
                let stable = d.s_acc[u]
                    .iter()
                    .filter(|&&w2| Some(w2) != target && d.s_prefers(u, Some(w2), target))
                    .all(|&w2| !self.blocks(u, w2, chosen[w2]));
                if stable {
                    o.push(target);
                }
            }
            if o.is_empty() {
                return Ok(None);
            }
            opts.push((u, o));
        }
        let target: Vec<u32> = chosen.iter().flat_map(|p| p.counts.iter().copied()).collect();
        // layers[i]: states after deciding the first i free students, with back-pointers
        let mut layers: Vec<Vec<State>> = vec![vec![(q0, 0, None)]];
        for (u, o) in &opts {
            let prev = layers.last().unwrap();
            let mut next: Vec<State> = Vec::new();
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            for (si, (q, _, _)) in prev.iter().enumerate() {
                for &w in o {
                    self.budget.tick()?;
                    let mut q2 = q.clone();
                    if let Some(w) = w {
                        let mut ok = true;
                        for z in 0..t {
                            q2[w * t + z] += d.tau(*u)[z] as u32;
                            ok &= q2[w * t + z] <= target[w * t + z];
                        }
                        if !ok {
                            continue;
                        }
                    }
                    if seen.insert(q2.clone()) {
                        next.push((q2, si, w));
                    }
                }
            }
            if next.is_empty() {
                return Ok(None);
            }
            layers.push(next);
        }
        let Some(end) = layers.last().unwrap().iter().position(|(q, _, _)| *q == target) else {
            return Ok(None);
        };
        self.budget.checked();
        let mut a = seeded;
        let mut si = end;
        for (i, (u, _)) in opts.iter().enumerate().rev() {
            let (_, back, w) = &layers[i + 1][si];
            a[*u] = *w;
            si = *back;
        }
        Ok(Some(a))
    }
}

/// Solves strict stability by branching on worst students and counts.
pub fn solve_dp_few_colleges_types(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    solve_dp_detailed(inst, opts).map(|(r, _)| r)
}

/// As [`solve_dp_few_colleges_types`], also returning the accepted branch.
pub fn solve_dp_detailed(inst: &Instance, opts: &SolveOptions) -> Result<(SolveResult, Option<DpBranch>)> {
    let orig = Dense::new(inst)?;
    let aug_inst = augment(inst);
    let d = Dense::new(&aug_inst)?;
    let budget = Budget::new(opts.budget);
    let dp = Dp::new(&d, &budget).map_err(|e| with_detail(e, " (dp-mt)"))?;
    let parallel = opts.parallel();
    let found = if d.m == 0 {
        Some((vec![None; d.n], Vec::new()))
    } else {
        let first: Vec<usize> = (0..dp.profiles[0].len()).collect();
        par::find_map(first, parallel, true, |i| {
            let p = &dp.profiles[0][i];
            let mut used = vec![false; d.n];
            p.wst.iter().flatten().for_each(|&u| used[u] = true);
            let mut chosen = vec![i];
            match dp.branch(&mut chosen, &mut used) {
                Ok(Some(r)) => {
                    budget.halt();
                    Some(Ok(r))
                }
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .transpose()
        .map_err(|e| with_detail(e, " (dp-mt)"))?
    };
    let branch = found.as_ref().map(|(a, picks)| describe(&dp, &d, a, picks));
    let res = finish(&orig, found.map(|(a, _)| a), "dp-mt", &budget, opts);
    verify_result(&orig, &res, SolveMode::Stable)?;
    Ok((res, branch))
}

/// The accepted branch's guesses and the final count matrix.
fn describe(dp: &Dp, d: &Dense, a: &[Option<usize>], picks: &[usize]) -> DpBranch {
    let bits = |v: &[u8]| -> String { v[..d.t - 1].iter().map(|&b| if b == 1 { '1' } else { '0' }).collect() };
    let mut wst = Vec::new();
    let mut counts = Vec::new();
    for (w, &i) in picks.iter().enumerate() {
        let p = &dp.profiles[w][i];
        for (cl, s) in dp.classes[w].iter().zip(&p.wst) {
            wst.push((d.cid[w].clone(), bits(cl), s.map(|u| d.sid[u].clone())));
        }
        for (z, &x) in p.counts.iter().enumerate() {
            counts.push((d.cid[w].clone(), z, x));
        }
    }
    let members = d.members(a);
    let mut q: Vec<Vec<u32>> = members.iter().map(|s| d.type_sum(s.iter().copied())).collect();
    q.push(d.type_sum((0..d.n).filter(|&u| a[u].is_none())));
    DpBranch { wst, counts, record: DpRecord { q } }
}
