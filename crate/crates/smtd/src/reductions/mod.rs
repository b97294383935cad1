//! Generators for hard instances built from classic problems, plus
//! brute-force oracles for those source problems so round trips can be
//! checked end to end.
//!
//! Literals use the DIMACS convention: variable `v` (1-based) is `v`, its
//! negation `-v`. In quantified formulas variables `1..=r` form X and
//! `r+1..=2r` form Y.

mod gadget;
mod indset;
mod not1in3;
mod parse;
mod sat22;
mod sets;

pub use gadget::gen_lemma2_gadget;
pub use indset::{gen_from_independent_set, max_independent_set};
pub use not1in3::gen_from_not1in3;
pub use parse::{parse_dimacs, parse_graph, parse_qdimacs, parse_set_system};
pub use sat22::{gen_from_sat22, sat22_occurrences_ok, Sat22Variant};
pub use sets::{exact_cover_exists, gen_from_set_cover, gen_from_set_packing, gen_x3c_blocking_instance};
pub use sets::{min_set_cover, set_packing_exists};

use crate::error::{Error, Result};
use crate::model::{College, CountVector, Student, TieList, TypeVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// ∃X ∀Y formula with |X| = |Y| = r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFormula {
    pub r: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Truth values indexed by variable − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: i32) -> bool {
        let v = self.0[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Rejects loops, out-of-range endpoints and duplicate edges.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidInstance(format!("bad edge ({}, {})", a + 1, b + 1)));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({}, {})", a + 1, b + 1)));
            }
        }
        Ok(Graph { n, edges })
    }
}

/// Sets over the universe `1..=universe`, each sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetSystem {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<SetSystem> {
        let mut out = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&e| e == 0 || e > universe) {
                return Err(Error::InvalidInstance(format!("set {s:?} leaves the universe 1..={universe}")));
            }
            out.push(s);
        }
        Ok(SetSystem { universe, sets: out, k })
    }
}

pub fn eval_cnf(f: &CnfFormula, a: &Assignment) -> bool {
    f.clauses.iter().all(|c| c.iter().any(|&l| a.value(l)))
}

/// Assignments in binary counting order (variable 1 is the lowest bit).
fn assignments(vars: usize) -> impl Iterator<Item = Assignment> {
    (0u64..1 << vars).map(move |mask| Assignment((0..vars).map(|i| mask >> i & 1 == 1).collect()))
}

/// Variable bound for the exhaustive oracles.
pub const MAX_ORACLE_VARS: usize = 24;

/// First satisfying assignment in counting order.
pub fn sat_bruteforce(f: &CnfFormula) -> Option<Assignment> {
    assert!(f.num_vars <= MAX_ORACLE_VARS, "too many variables for exhaustive search");
    assignments(f.num_vars).find(|a| eval_cnf(f, a))
}

fn one_in_three(clause: &[i32], a: &Assignment) -> bool {
    clause.iter().filter(|&&l| a.value(l)).count() == 1
}

/// ∃σ_X ∀σ_Y: some clause does not have exactly one true literal.
pub fn eval_exists_forall_not1in3(q: &QFormula) -> Result<bool> {
    if 2 * q.r > MAX_ORACLE_VARS {
        return Err(Error::BudgetExceeded {
            limit: MAX_ORACLE_VARS as u64,
            detail: format!(" (quantified oracle: {} variables)", 2 * q.r),
        });
    }
    Ok(assignments(q.r).any(|sx| {
        assignments(q.r).all(|sy| {
            let mut all = sx.0.clone();
            all.extend(sy.0);
            let a = Assignment(all);
            q.clauses.iter().any(|c| !one_in_three(c, &a))
        })
    }))
}

// ---- shared builders for generators ----

pub(crate) fn tv(len: usize, idx: &[usize]) -> TypeVector {
    TypeVector::from_indices(len, idx).expect("type index in range")
}

pub(crate) fn strict(ids: &[String]) -> TieList {
    TieList::strict(ids)
}

pub(crate) fn student(id: &str, types: TypeVector, prefs: &[String]) -> Student {
    Student { id: id.to_string(), types, prefs: strict(prefs) }
}

pub(crate) fn college(id: &str, prefs: TieList, lower: Vec<u32>, upper: Vec<u32>, capacity: u32) -> College {
    College { id: id.to_string(), prefs, lower: CountVector(lower), upper: CountVector(upper), capacity }
}

pub(crate) fn ids<S: AsRef<str>>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}
