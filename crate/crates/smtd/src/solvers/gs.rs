//! Branching for instances without lower quotas and without ties.
//!
//! Some college's most preferred unassigned student that still fits there must
//! be matched in every stable extension of the current partial matching, so
//! the search branches only on where that student goes.

use super::brute::with_detail;
use super::{finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::{Error, Result};
use crate::model::{Assign, Dense, Instance};
use crate::par;
use crate::verify::dense_zero_lower;

#[derive(Clone)]
struct Node {
    a: Assign,
    counts: Vec<u32>,
    sizes: Vec<u32>,
}

struct Gs<'a> {
    d: &'a Dense,
    budget: &'a Budget,
}

impl Gs<'_> {
    fn fits(&self, nd: &Node, u: usize, w: usize) -> bool {
        let (d, t) = (self.d, self.d.t);
        nd.sizes[w] < d.cap[w] && (0..t).all(|z| nd.counts[w * t + z] + d.tau(u)[z] as u32 <= d.upper(w)[z])
    }

    /// A student that is some college's best unassigned student among those fitting there.
    fn locate(&self, nd: &Node) -> Option<usize> {
        (0..self.d.m).find_map(|w| self.d.c_acc[w].iter().copied().find(|&u| nd.a[u].is_none() && self.fits(nd, u, w)))
    }

    fn children(&self, nd: &Node, u: usize) -> Vec<Node> {
        let (d, t) = (self.d, self.d.t);
        d.s_acc[u]
            .iter()
            .copied()
            .filter(|&w| self.fits(nd, u, w))
            .map(|w| {
                let mut c = nd.clone();
                c.a[u] = Some(w);
                c.sizes[w] += 1;
                (0..t).for_each(|z| c.counts[w * t + z] += d.tau(u)[z] as u32);
                c
            })
            .collect()
    }

    fn run(&self, nd: Node) -> Result<Option<Assign>> {
        self.budget.tick()?;
        if self.budget.stopped() {
            return Ok(None);
        }
        match self.locate(&nd) {
            None => {
                self.budget.checked();
                Ok(dense_zero_lower(self.d, &nd.a).is_none().then_some(nd.a))
            }
            Some(u) => {
                for c in self.children(&nd, u) {
                    if let Some(a) = self.run(c)? {
                        return Ok(Some(a));
                    }
                }
                Ok(None)
            }
        }
    }

    fn split(&self, root: Node, target: usize) -> Vec<Node> {
        let mut level = vec![root];
        while level.len() < target {
            let mut next = Vec::new();
            let mut expanded = false;
            for nd in level {
                match self.locate(&nd) {
                    Some(u) => {
                        expanded = true;
                        next.extend(self.children(&nd, u));
                    }
                    None => next.push(nd),
                }
            }
            level = next;
            if !expanded {
                break;
            }
        }
        level
    }
}

pub fn solve_gs_branching(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let d = Dense::new(inst)?;
    if d.ties {
        return Err(Error::PreconditionViolated("gs-branch requires strict preferences".into()));
    }
    if d.lower_max > 0 {
        return Err(Error::PreconditionViolated("gs-branch requires all lower quotas to be zero".into()));
    }
    let budget = Budget::new(opts.budget);
    let gs = Gs { d: &d, budget: &budget };
    let root = Node { a: vec![None; d.n], counts: vec![0; d.m * d.t], sizes: vec![0; d.m] };
    let parallel = opts.parallel();
    let tasks = if parallel { gs.split(root, 64) } else { vec![root] };
    let found = par::find_map(tasks, parallel, false, |nd| match gs.run(nd) {
        Ok(Some(a)) => {
            budget.halt();
            Some(Ok(a))
        }
        Ok(None) => None,
        Err(e) => Some(Err(e)),
    })
    .transpose()
    .map_err(|e| with_detail(e, " (gs-branch)"))?;
    let res = finish(&d, found, "gs-branch", &budget, opts);
    verify_result(&d, &res, SolveMode::Stable)?;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex1_zero_lower};
    use crate::model::parse_instance;
    use crate::solvers::solve_bruteforce;

    #[test]
    fn agrees_with_oracle_on_zero_lower_example() {
        let inst = ex1_zero_lower();
        let opts = SolveOptions::sequential();
        let gs = solve_gs_branching(&inst, &opts).unwrap();
        let bf = solve_bruteforce(&inst, SolveMode::Stable, &opts).unwrap();
        assert_eq!(gs.status, bf.status);
    }

    #[test]
    fn rejects_lower_quotas() {
        assert!(matches!(
            solve_gs_branching(&ex1(), &SolveOptions::sequential()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn single_pair() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[0],"prefs":[["w"]]}],
            "colleges":[{"id":"w","prefs":[["u"]],"lower":[0],"upper":[1],"capacity":1}]}"#;
        let r = solve_gs_branching(&parse_instance(doc).unwrap(), &SolveOptions::sequential()).unwrap();
        assert!(r.is_yes());
    }
}
