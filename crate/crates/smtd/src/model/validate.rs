use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{Instance, TieList};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NoTypes,
    DuplicateId,
    TypeLength,
    QuotaLength,
    EmptyPrefs,
    DuplicateInPrefs,
    Asymmetry,
    LowerExceedsUpper,
    CapacityOutOfRange,
    QuotaOutOfRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Id of the offending student or college (empty for instance-level issues).
    pub location: String,
    pub detail: String,
}

fn push(out: &mut Vec<Violation>, kind: ViolationKind, location: &str, detail: String) {
    out.push(Violation { kind, location: location.to_string(), detail });
}

fn check_prefs(out: &mut Vec<Violation>, owner: &str, prefs: &TieList) {
    if prefs.is_empty() || prefs.groups.iter().any(Vec::is_empty) {
        push(out, ViolationKind::EmptyPrefs, owner, "empty preference list or tie group".into());
    }
    let mut seen = HashSet::new();
    for id in prefs.iter() {
        if !seen.insert(id) {
            push(out, ViolationKind::DuplicateInPrefs, owner, format!("{id} listed twice"));
        }
    }
}

/// Reports every violated invariant; an empty report means the instance is valid.
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    use ViolationKind::*;
    let mut out = Vec::new();
    let t = inst.num_types;
    let n = inst.n() as u32;
    if t == 0 {
        push(&mut out, NoTypes, "", "num_types must be positive".into());
    }

    let mut students: HashMap<&str, &TieList> = HashMap::new();
    for s in &inst.students {
        if students.insert(&s.id, &s.prefs).is_some() {
            push(&mut out, DuplicateId, &s.id, "duplicate student id".into());
        }
        if s.types.len() != t {
            push(&mut out, TypeLength, &s.id, format!("type vector has length {}, expected {t}", s.types.len()));
        }
        check_prefs(&mut out, &s.id, &s.prefs);
    }
    let mut colleges: HashMap<&str, &TieList> = HashMap::new();
    for c in &inst.colleges {
        if colleges.insert(&c.id, &c.prefs).is_some() {
            push(&mut out, DuplicateId, &c.id, "duplicate college id".into());
        }
        check_prefs(&mut out, &c.id, &c.prefs);
        if c.lower.len() != t || c.upper.len() != t {
            push(&mut out, QuotaLength, &c.id, format!("quota vectors must have length {t}"));
        } else if !c.lower.le(&c.upper) {
            push(&mut out, LowerExceedsUpper, &c.id, format!("lower {:?} exceeds upper {:?}", c.lower.0, c.upper.0));
        }
        if c.capacity < 1 || c.capacity > n {
            push(&mut out, CapacityOutOfRange, &c.id, format!("capacity {} not in [1, {n}]", c.capacity));
        }
        if let Some(&q) = c.lower.0.iter().chain(&c.upper.0).find(|&&q| q > n) {
            push(&mut out, QuotaOutOfRange, &c.id, format!("quota entry {q} exceeds n = {n}"));
        }
    }

    for s in &inst.students {
        for w in s.prefs.iter() {
            if !colleges.get(w.as_str()).is_some_and(|p| p.contains(&s.id)) {
                push(&mut out, Asymmetry, &s.id, format!("{} accepts {w} but not conversely", s.id));
            }
        }
    }
    for c in &inst.colleges {
        for u in c.prefs.iter() {
            if !students.get(u.as_str()).is_some_and(|p| p.contains(&c.id)) {
                push(&mut out, Asymmetry, &c.id, format!("{} accepts {u} but not conversely", c.id));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ex1;

    #[test]
    fn running_example_is_valid() {
        assert!(validate_instance(&ex1()).is_empty());
    }

    #[test]
    fn one_sided_acceptance() {
        let mut inst = ex1();
        inst.colleges[1].prefs.remove("u4");
        let report = validate_instance(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].kind, ViolationKind::Asymmetry);
        assert_eq!(report[0].location, "u4");
    }

    #[test]
    fn lower_above_upper() {
        let mut inst = ex1();
        inst.colleges[0].lower.0 = vec![2, 0];
        inst.colleges[0].upper.0 = vec![1, 1];
        let report = validate_instance(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].kind, ViolationKind::LowerExceedsUpper);
    }

    #[test]
    fn capacity_and_quota_range() {
        let mut inst = ex1();
        inst.colleges[0].capacity = 0;
        inst.colleges[1].upper.0 = vec![5, 1];
        let kinds: Vec<_> = validate_instance(&inst).into_iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::CapacityOutOfRange, ViolationKind::QuotaOutOfRange]);
    }
}
