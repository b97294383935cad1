//! Three special students r1, r2, r3 and colleges a, b that force every core
//! college to fill up in any stable matching.

use super::{college, ids, strict, student};
use crate::error::{Error, Result};
use crate::model::{Instance, TypeVector};

/// Core students (types without the two special ones) and core colleges
/// (id, capacity, upper quotas on the core types). Core students accept every
/// core college in the given order; core colleges rank the core students in
/// the given order, then r2.
pub fn gen_lemma2_gadget(core_students: &[(String, TypeVector)], core_colleges: &[(String, u32, Vec<u32>)]) -> Result<Instance> {
    let t0 = core_students
        .first()
        .map(|(_, t)| t.len())
        .or_else(|| core_colleges.first().map(|(_, _, u)| u.len()))
        .unwrap_or(0);
    if core_students.iter().any(|(_, t)| t.len() != t0) || core_colleges.iter().any(|(_, _, u)| u.len() != t0) {
        return Err(Error::PreconditionViolated("core type vectors and quota prefixes must share one length".into()));
    }
    let t = t0 + 2;
    let special = |bits: [bool; 2]| {
        let mut v = vec![false; t0];
        v.extend(bits);
        TypeVector::from_bits(v)
    };
    let sids: Vec<String> = core_students.iter().map(|(s, _)| s.clone()).collect();
    let cids: Vec<String> = core_colleges.iter().map(|(c, _, _)| c.clone()).collect();

    let mut students: Vec<_> = core_students
        .iter()
        .map(|(id, tau)| {
            let mut bits = tau.bits().to_vec();
            bits.extend([false, false]);
            student(id, TypeVector::from_bits(bits), &cids)
        })
        .collect();
    let mut r2_prefs = ids(&["b"]);
    r2_prefs.extend(cids.iter().cloned());
    r2_prefs.push("a".into());
    students.push(student("r1", special([true, false]), &ids(&["b", "a"])));
    students.push(student("r2", special([true, true]), &r2_prefs));
    students.push(student("r3", special([false, true]), &ids(&["a", "b"])));

    let gadget_upper = |mut prefix: Vec<u32>| {
        prefix.extend([1, 1]);
        prefix
    };
    let mut colleges: Vec<_> = core_colleges
        .iter()
        .map(|(id, cap, upper)| {
            let mut prefs = sids.clone();
            prefs.push("r2".into());
            college(id, strict(&prefs), vec![0; t], gadget_upper(upper.clone()), *cap)
        })
        .collect();
    colleges.push(college("a", strict(&ids(&["r1", "r2", "r3"])), vec![0; t], gadget_upper(vec![0; t0]), 1));
    colleges.push(college("b", strict(&ids(&["r3", "r2", "r1"])), vec![0; t], gadget_upper(vec![0; t0]), 2));
    Ok(Instance { num_types: t, students, colleges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_instance, Matching};
    use crate::solvers::{enumerate_feasible, solve_bruteforce, SolveMode, SolveOptions, DEFAULT_BUDGET};
    use crate::verify::{find_blocking_pair, StabilityMode, Strategy};

    #[test]
    fn empty_core_has_unique_stable_configuration() {
        let inst = gen_lemma2_gadget(&[], &[]).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert_eq!((inst.n(), inst.m()), (3, 2));
        let stable: Vec<Matching> = enumerate_feasible(&inst, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .filter(|m| find_blocking_pair(&inst, m, StabilityMode::Strict, Strategy::Exhaustive).unwrap().is_none())
            .collect();
        assert_eq!(stable, vec![Matching::from_strs(&[("r2", "a"), ("r1", "b"), ("r3", "b")])]);
        assert!(solve_bruteforce(&inst, SolveMode::Stable, &SolveOptions::sequential()).unwrap().is_yes());
    }

    #[test]
    fn single_core_pair() {
        let inst = gen_lemma2_gadget(&[("x".into(), TypeVector::zeros(0))], &[("w".into(), 1, vec![])]).unwrap();
        assert!(validate_instance(&inst).is_empty());
        let full = Matching::from_strs(&[("r2", "a"), ("r1", "b"), ("r3", "b"), ("x", "w")]);
        assert!(find_blocking_pair(&inst, &full, StabilityMode::Strict, Strategy::Exhaustive).unwrap().is_none());
    }
}
