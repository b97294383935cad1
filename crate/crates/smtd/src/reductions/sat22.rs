//! Two types, upper quotas one, capacities two: stability (or, with a third
//! type, plain feasibility) encodes 3SAT where every literal occurs twice.

use super::{college, ids, strict, student, tv, CnfFormula};
use crate::error::{Error, Result};
use crate::model::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sat22Variant {
    Stable,
    Feasible,
}

/// Every clause has three literals and every literal occurs exactly twice.
pub fn sat22_occurrences_ok(f: &CnfFormula) -> bool {
    let mut count = vec![[0usize; 2]; f.num_vars];
    for c in &f.clauses {
        if c.len() != 3 {
            return false;
        }
        for &l in c {
            let v = l.unsigned_abs() as usize;
            if l == 0 || v > f.num_vars {
                return false;
            }
            count[v - 1][(l < 0) as usize] += 1;
        }
    }
    count.iter().all(|c| *c == [2, 2])
}

pub fn gen_from_sat22(f: &CnfFormula, variant: Sat22Variant) -> Result<Instance> {
    if f.num_vars == 0 || !sat22_occurrences_ok(f) {
        return Err(Error::PreconditionViolated("every literal must occur exactly twice in 3-literal clauses".into()));
    }
    let (r, s) = (f.num_vars, f.clauses.len());
    let feasible = variant == Sat22Variant::Feasible;
    let t = if feasible { 3 } else { 2 };
    // bits of the two base types, plus the shared third type in the feasible variant
    let types = |base: &[usize]| {
        let mut idx = base.to_vec();
        if feasible {
            idx.push(2);
        }
        tv(t, &idx)
    };
    // s^z[c_j] and c[·]: occurrences numbered 1, 2 in clause order
    let mut seen = vec![[0usize; 2]; r];
    let mut slot: Vec<Vec<String>> = Vec::with_capacity(s);
    let mut clause_of = vec![[[0usize; 2]; 2]; r]; // [var][neg][occurrence] -> clause
    for (j, c) in f.clauses.iter().enumerate() {
        let mut row = Vec::new();
        for &l in c {
            let (v, neg) = (l.unsigned_abs() as usize - 1, (l < 0) as usize);
            let z = seen[v][neg];
            seen[v][neg] += 1;
            clause_of[v][neg][z] = j;
            row.push(format!("{}{}_{}", if neg == 0 { "u" } else { "v" }, v + 1, z + 1));
        }
        slot.push(row);
    }
    let cid = |j: usize| format!("c{}", j + 1);

    let mut students = Vec::new();
    for i in 0..r {
        let (w, p) = (format!("w{}", i + 1), format!("p{}", i + 1));
        students.push(student(&format!("x{}", i + 1), types(&[0]), &[p.clone(), w.clone()]));
        students.push(student(&format!("y{}", i + 1), types(&[1]), &[w.clone(), p.clone()]));
        for (name, home, neg) in [("u", &w, 0), ("v", &p, 1)] {
            for z in 0..2 {
                let base: &[usize] = if z == 0 { &[0, 1] } else { &[] };
                let prefs = [home.clone(), cid(clause_of[i][neg][z])];
                students.push(student(&format!("{name}{}_{}", i + 1, z + 1), types(base), &prefs));
            }
        }
    }
    if !feasible {
        let mut r2 = ids(&["b"]);
        r2.extend((0..s).map(cid));
        r2.push("a".into());
        students.push(student("r1", tv(2, &[0]), &ids(&["b", "a"])));
        students.push(student("r2", tv(2, &[0, 1]), &r2));
        students.push(student("r3", tv(2, &[1]), &ids(&["a", "b"])));
    }

    let mut colleges = Vec::new();
    let (var_lower, var_upper, clause_lower, clause_upper) = if feasible {
        (vec![1, 1, 2], vec![1, 1, 2], vec![0, 0, 1], vec![1, 1, 1])
    } else {
        (vec![0, 0], vec![1, 1], vec![0, 0], vec![1, 1])
    };
    for i in 0..r {
        let k = i + 1;
        let wp = [format!("x{k}"), format!("u{k}_1"), format!("y{k}"), format!("u{k}_2")];
        let pp = [format!("y{k}"), format!("v{k}_1"), format!("x{k}"), format!("v{k}_2")];
        colleges.push(college(&format!("w{k}"), strict(&wp), var_lower.clone(), var_upper.clone(), 2));
        colleges.push(college(&format!("p{k}"), strict(&pp), var_lower.clone(), var_upper.clone(), 2));
    }
    for (j, row) in slot.iter().enumerate() {
        let mut prefs = row.clone();
        if !feasible {
            prefs.push("r2".into());
        }
        colleges.push(college(&cid(j), strict(&prefs), clause_lower.clone(), clause_upper.clone(), 1));
    }
    if !feasible {
        colleges.push(college("a", strict(&ids(&["r1", "r2", "r3"])), vec![0, 0], vec![1, 1], 1));
        colleges.push(college("b", strict(&ids(&["r3", "r2", "r1"])), vec![0, 0], vec![1, 1], 2));
    }
    Ok(Instance { num_types: t, students, colleges })
}
