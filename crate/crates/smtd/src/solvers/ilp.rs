//! Integer program for plain feasibility: one variable per (college, type
//! group) counting how many group members the college receives.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::{finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::{Error, Result};
use crate::model::{compute_type_groups, validate_instance, Dense, Instance, Matching, TypeGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IlpVar {
    pub college: String,
    /// Index into [`IlpModel::groups`].
    pub group: usize,
    pub name: String,
    pub upper_bound: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// Σ_{v ∈ vars} x_v (sense) rhs; all coefficients are 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IlpRow {
    pub name: String,
    pub vars: Vec<usize>,
    pub sense: Sense,
    pub rhs: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IlpModel {
    pub groups: Vec<TypeGroup>,
    pub vars: Vec<IlpVar>,
    pub rows: Vec<IlpRow>,
}

/// Variables in college order, then canonical group order. Rows: nonnegativity,
/// group sizes, capacities, then per college and type the lower and upper quota.
pub fn build_ilp(inst: &Instance) -> Result<IlpModel> {
    if let Some(v) = validate_instance(inst).first() {
        return Err(Error::InvalidInstance(v.detail.clone()));
    }
    let n = inst.n() as u32;
    let groups = compute_type_groups(inst);
    let mut vars = Vec::new();
    let mut by_college: Vec<Vec<usize>> = Vec::new();
    for c in &inst.colleges {
        let mut mine = Vec::new();
        for (g, grp) in groups.iter().enumerate() {
            if grp.accepts(&c.id) {
                mine.push(vars.len());
                vars.push(IlpVar { college: c.id.clone(), group: g, name: format!("x__{}__g{g}", c.id), upper_bound: n });
            }
        }
        by_college.push(mine);
    }
    let mut rows = Vec::new();
    for (v, var) in vars.iter().enumerate() {
        rows.push(IlpRow { name: format!("nonneg_{}", var.name), vars: vec![v], sense: Sense::Ge, rhs: 0 });
    }
    for (g, grp) in groups.iter().enumerate() {
        let vs = (0..vars.len()).filter(|&v| vars[v].group == g).collect();
        rows.push(IlpRow { name: format!("group_g{g}"), vars: vs, sense: Sense::Le, rhs: grp.members.len() as u32 });
    }
    for (c, mine) in inst.colleges.iter().zip(&by_college) {
        rows.push(IlpRow { name: format!("cap_{}", c.id), vars: mine.clone(), sense: Sense::Le, rhs: c.capacity });
    }
    for (c, mine) in inst.colleges.iter().zip(&by_college) {
        for z in 0..inst.num_types {
            let vs: Vec<usize> = mine.iter().copied().filter(|&v| groups[vars[v].group].signature_types.get(z)).collect();
            rows.push(IlpRow { name: format!("lower_{}_{z}", c.id), vars: vs.clone(), sense: Sense::Ge, rhs: c.lower.0[z] });
            rows.push(IlpRow { name: format!("upper_{}_{z}", c.id), vars: vs, sense: Sense::Le, rhs: c.upper.0[z] });
        }
    }
    Ok(IlpModel { groups, vars, rows })
}

impl IlpModel {
    pub fn is_satisfied(&self, x: &[u32]) -> bool {
        x.len() == self.vars.len()
            && self.rows.iter().all(|r| {
                let s: u32 = r.vars.iter().map(|&v| x[v]).sum();
                match r.sense {
                    Sense::Le => s <= r.rhs,
                    Sense::Ge => s >= r.rhs,
                }
            })
    }

    /// Gives each college x members of each group, smallest ids first.
    pub fn materialize(&self, x: &[u32]) -> Matching {
        let mut used: HashSet<&str> = HashSet::new();
        let mut pairs = Vec::new();
        for (v, var) in self.vars.iter().enumerate() {
            let fresh: Vec<&String> =
                self.groups[var.group].members.iter().filter(|s| !used.contains(s.as_str())).take(x[v] as usize).collect();
            for s in fresh {
                used.insert(s);
                pairs.push((s.clone(), var.college.clone()));
            }
        }
        Matching::new(pairs)
    }

    /// Variable values counted from a matching.
    pub fn induced_assignment(&self, m: &Matching) -> Vec<u32> {
        self.vars
            .iter()
            .map(|var| {
                self.groups[var.group].members.iter().filter(|s| m.college_of(s) == Some(var.college.as_str())).count() as u32
            })
            .collect()
    }

    /// Textual LP file.
    pub fn to_lp(&self) -> String {
        let mut out = String::from("Minimize\n obj: 0\nSubject To\n");
        for r in &self.rows {
            let lhs = if r.vars.is_empty() {
                "0".to_string()
            } else {
                r.vars.iter().map(|&v| self.vars[v].name.as_str()).collect::<Vec<_>>().join(" + ")
            };
            let op = match r.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
            };
            let _ = writeln!(out, " {}: {lhs} {op} {}", r.name, r.rhs);
        }
        out.push_str("Bounds\n");
        for v in &self.vars {
            let _ = writeln!(out, " 0 <= {} <= {}", v.name, v.upper_bound);
        }
        out.push_str("General\n");
        for v in &self.vars {
            let _ = writeln!(out, " {}", v.name);
        }
        out.push_str("End\n");
        out
    }

    /// Depth-first search over integer points with bound propagation.
    pub(crate) fn search(&self, budget: &Budget) -> Result<Option<Vec<u32>>> {
        let mut lo = vec![0u32; self.vars.len()];
        let mut hi: Vec<u32> = self
            .vars
            .iter()
            .map(|v| v.upper_bound.min(self.groups[v.group].members.len() as u32))
            .collect();
        self.dfs(&mut lo, &mut hi, budget)
    }

    fn propagate(&self, lo: &mut [u32], hi: &mut [u32]) -> bool {
        loop {
            let mut changed = false;
            for r in &self.rows {
                let slo: u32 = r.vars.iter().map(|&v| lo[v]).sum();
                let shi: u32 = r.vars.iter().map(|&v| hi[v]).sum();
                match r.sense {
                    Sense::Le => {
                        if slo > r.rhs {
                            return false;
                        }
                        for &v in &r.vars {
                            let cap = r.rhs - (slo - lo[v]);
                            if hi[v] > cap {
                                hi[v] = cap;
                                changed = true;
                            }
                        }
                    }
                    Sense::Ge => {
                        if shi < r.rhs {
                            return false;
                        }
                        for &v in &r.vars {
                            let need = r.rhs.saturating_sub(shi - hi[v]);
                            if lo[v] < need {
                                lo[v] = need;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
                return false;
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&self, lo: &mut [u32], hi: &mut [u32], budget: &Budget) -> Result<Option<Vec<u32>>> {
        budget.tick()?;
        if !self.propagate(lo, hi) {
            return Ok(None);
        }
        let Some(v) = (0..lo.len()).find(|&v| lo[v] < hi[v]) else {
            budget.checked();
            return Ok(self.is_satisfied(lo).then(|| lo.to_vec()));
        };
        for val in lo[v]..=hi[v] {
            let (mut l2, mut h2) = (lo.to_vec(), hi.to_vec());
            l2[v] = val;
            h2[v] = val;
            if let Some(x) = self.dfs(&mut l2, &mut h2, budget)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Decides whether a feasible matching exists via the integer program.
pub fn solve_ilp_feasible(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let d = Dense::new(inst)?;
    let model = build_ilp(inst)?;
    let budget = Budget::new(opts.budget);
    let x = model.search(&budget).map_err(|e| super::brute::with_detail(e, " (ilp)"))?;
    let found = match x {
        Some(x) => Some(d.assign_of(&model.materialize(&x))?),
        None => None,
    };
    let res = finish(&d, found, "ilp", &budget, opts);
    verify_result(&d, &res, SolveMode::Feasible)?;
    Ok(res)
}
