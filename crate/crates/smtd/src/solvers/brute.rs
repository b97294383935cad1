//! Exhaustive assignment search with quota pruning; the reference oracle.

use super::{dense_satisfies, finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::{Error, Result};
use crate::model::{Assign, Dense, Instance, Matching};
use crate::par;

/// Partial assignment of the first `next` students.
#[derive(Clone)]
pub(crate) struct Node {
    next: usize,
    a: Assign,
    counts: Vec<u32>,
    sizes: Vec<u32>,
}

/// Depth-first enumeration of feasible assignments. Students are decided in
/// input order; each tries its acceptable colleges best first, then ⊥.
pub(crate) struct Enumerator<'a> {
    d: &'a Dense,
    /// rem[(i·m + w)·t + z]: type-z supply among students ≥ i accepting w.
    rem: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    pub(crate) fn new(d: &'a Dense) -> Self {
        let (n, m, t) = (d.n, d.m, d.t);
        let mut rem = vec![0u32; (n + 1) * m * t];
        for i in (0..n).rev() {
            let (head, tail) = rem.split_at_mut((i + 1) * m * t);
            head[i * m * t..].copy_from_slice(&tail[..m * t]);
            for &w in &d.s_acc[i] {
                for z in 0..t {
                    head[(i * m + w) * t + z] += d.tau(i)[z] as u32;
                }
            }
        }
        Enumerator { d, rem }
    }

    pub(crate) fn root(&self) -> Node {
        Node { next: 0, a: vec![None; self.d.n], counts: vec![0; self.d.m * self.d.t], sizes: vec![0; self.d.m] }
    }

    fn can_place(&self, node: &Node, u: usize, w: usize) -> bool {
        let d = self.d;
        let t = d.t;
        node.sizes[w] < d.cap[w]
            && (0..t).all(|z| node.counts[w * t + z] + d.tau(u)[z] as u32 <= d.upper(w)[z])
    }

    fn place(&self, node: &mut Node, u: usize, w: Option<usize>, sign: i32) {
        if let Some(w) = w {
            let t = self.d.t;
            for z in 0..t {
                let c = &mut node.counts[w * t + z];
                *c = (*c as i32 + sign * self.d.tau(u)[z] as i32) as u32;
            }
            node.sizes[w] = (node.sizes[w] as i32 + sign) as u32;
        }
    }

    /// Lower quotas of u's colleges are still reachable once u is decided.
    fn reachable(&self, node: &Node, u: usize) -> bool {
        let d = self.d;
        let (m, t) = (d.m, d.t);
        d.s_acc[u].iter().all(|&w| {
            (0..t).all(|z| node.counts[w * t + z] + self.rem[((u + 1) * m + w) * t + z] >= d.lower(w)[z])
        })
    }

    fn options(&self, u: usize) -> impl Iterator<Item = Option<usize>> + '_ {
        self.d.s_acc[u].iter().map(|&w| Some(w)).chain(std::iter::once(None))
    }

    /// Children of `node` in canonical order.
    fn children(&self, node: &Node) -> Vec<Node> {
        let u = node.next;
        let mut out = Vec::new();
        for w in self.options(u) {
            if w.is_some_and(|w| !self.can_place(node, u, w)) {
                continue;
            }
            let mut c = node.clone();
            self.place(&mut c, u, w, 1);
            c.a[u] = w;
            c.next += 1;
            if self.reachable(&c, u) {
                out.push(c);
            }
        }
        out
    }

    /// Breadth-first expansion into at least `target` independent subtrees
    /// (fewer if the tree is small), in canonical order.
    pub(crate) fn split(&self, target: usize) -> Vec<Node> {
        let mut level = vec![self.root()];
        while level.len() < target && level.iter().all(|nd| nd.next < self.d.n) {
            level = level.iter().flat_map(|nd| self.children(nd)).collect();
            if level.is_empty() {
                break;
            }
        }
        level
    }

    /// Visits every feasible completion of `node`; `visit` returns true to stop.
    pub(crate) fn run<F>(&self, node: &mut Node, budget: &Budget, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&Assign) -> bool,
    {
        budget.tick()?;
        if budget.stopped() {
            return Ok(true);
        }
        let u = node.next;
        if u == self.d.n {
            budget.checked();
            return Ok(visit(&node.a));
        }
        for w in self.options(u) {
            if w.is_some_and(|w| !self.can_place(node, u, w)) {
                continue;
            }
            self.place(node, u, w, 1);
            node.a[u] = w;
            node.next += 1;
            let stop = if self.reachable(node, u) { self.run(node, budget, visit)? } else { false };
            node.next -= 1;
            node.a[u] = None;
            self.place(node, u, w, -1);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// First assignment (in canonical order when sequential) satisfying `mode`.
pub(crate) fn dense_brute(d: &Dense, mode: SolveMode, opts: &SolveOptions, budget: &Budget) -> Result<Option<Assign>> {
    let e = Enumerator::new(d);
    let parallel = opts.parallel();
    let tasks = if parallel { e.split(64) } else { vec![e.root()] };
    let found = par::find_map(tasks, parallel, false, |mut node| {
        let mut hit = None;
        let r = e.run(&mut node, budget, &mut |a| {
            if dense_satisfies(d, a, mode) {
                hit = Some(a.clone());
                true
            } else {
                false
            }
        });
        match r {
            Err(err) => Some(Err(err)),
            Ok(_) => hit.map(|a| {
                budget.halt();
                Ok(a)
            }),
        }
    });
    found.transpose()
}

/// Exhaustive search over all assignments of students to {⊥} ∪ A(u).
pub fn solve_bruteforce(inst: &Instance, mode: SolveMode, opts: &SolveOptions) -> Result<SolveResult> {
    let d = Dense::new(inst)?;
    if mode == SolveMode::CStable && d.ties {
        return Err(Error::TiesPresent);
    }
    let budget = Budget::new(opts.budget);
    let found = dense_brute(&d, mode, opts, &budget).map_err(|e| with_detail(e, " (brute force)"))?;
    let res = finish(&d, found, "brute", &budget, opts);
    verify_result(&d, &res, mode)?;
    Ok(res)
}

pub(crate) fn with_detail(e: Error, detail: &str) -> Error {
    match e {
        Error::BudgetExceeded { limit, .. } => Error::BudgetExceeded { limit, detail: detail.to_string() },
        other => other,
    }
}

/// All feasible matchings, in canonical order.
pub fn enumerate_feasible(inst: &Instance, budget: u64) -> Result<Vec<Matching>> {
    let d = Dense::new(inst)?;
    Ok(dense_enumerate_feasible(&d, budget)?.iter().map(|a| d.matching_of(a)).collect())
}

pub(crate) fn dense_enumerate_feasible(d: &Dense, budget: u64) -> Result<Vec<Assign>> {
    let e = Enumerator::new(d);
    let budget = Budget::new(budget);
    let mut out = Vec::new();
    e.run(&mut e.root(), &budget, &mut |a| {
        out.push(a.clone());
        false
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex1_m1, ex1_m2};

    #[test]
    fn running_example_feasible_matchings() {
        let all = enumerate_feasible(&ex1(), 1_000_000).unwrap();
        assert!(all.contains(&ex1_m1()));
        assert!(all.contains(&ex1_m2()));
        // M1, M2 and the two partial ones leaving u1 or u2 unmatched
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn running_example_decisions() {
        let opts = SolveOptions::sequential();
        let r = solve_bruteforce(&ex1(), SolveMode::Feasible, &opts).unwrap();
        assert_eq!(r.matching, Some(ex1_m1()));
        assert!(!solve_bruteforce(&ex1(), SolveMode::Stable, &opts).unwrap().is_yes());
        let r = solve_bruteforce(&ex1(), SolveMode::DStable, &opts).unwrap();
        assert_eq!(r.matching, Some(ex1_m1()));
    }

    #[test]
    fn parallel_agrees() {
        let r = solve_bruteforce(&ex1(), SolveMode::DStable, &SolveOptions::default()).unwrap();
        assert!(r.is_yes());
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SolveOptions::sequential().with_budget(3);
        assert!(matches!(
            solve_bruteforce(&ex1(), SolveMode::Stable, &opts),
            Err(Error::BudgetExceeded { limit: 3, .. })
        ));
    }
}
