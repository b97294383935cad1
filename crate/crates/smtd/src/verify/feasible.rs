use serde::Serialize;

use crate::error::Result;
use crate::model::{Dense, Instance, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationBound {
    Capacity,
    LowerQuota,
    UpperQuota,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityViolation {
    pub college: String,
    pub kind: ViolationBound,
    /// Type index for quota violations.
    pub type_index: Option<usize>,
    pub observed: u32,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub violations: Vec<FeasibilityViolation>,
}

pub(crate) fn dense_report(d: &Dense, a: &[Option<usize>]) -> FeasibilityReport {
    let mut violations = Vec::new();
    for (w, set) in d.members(a).iter().enumerate() {
        let college = &d.cid[w];
        if set.len() as u32 > d.cap[w] {
            violations.push(FeasibilityViolation {
                college: college.clone(),
                kind: ViolationBound::Capacity,
                type_index: None,
                observed: set.len() as u32,
                bound: d.cap[w],
            });
        }
        let counts = d.type_sum(set.iter().copied());
        for z in 0..d.t {
            let (c, l, h) = (counts[z], d.lower(w)[z], d.upper(w)[z]);
            if c < l {
                violations.push(FeasibilityViolation {
                    college: college.clone(),
                    kind: ViolationBound::LowerQuota,
                    type_index: Some(z),
                    observed: c,
                    bound: l,
                });
            }
            if c > h {
                violations.push(FeasibilityViolation {
                    college: college.clone(),
                    kind: ViolationBound::UpperQuota,
                    type_index: Some(z),
                    observed: c,
                    bound: h,
                });
            }
        }
    }
    FeasibilityReport { feasible: violations.is_empty(), violations }
}

/// Checks capacity and both quota vectors at every college.
pub fn check_feasible(inst: &Instance, mat: &Matching) -> Result<FeasibilityReport> {
    let d = Dense::new(inst)?;
    let a = d.assign_of(mat)?;
    Ok(dense_report(&d, &a))
}
