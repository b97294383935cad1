//! Four colleges, upper quotas at most three: stability encodes an ∃∀
//! quantified formula.

use super::{college, ids, strict, student, tv, QFormula};
use crate::error::{Error, Result};
use crate::model::Instance;

/// Student id of a literal: `x1`/`nx1` for X, `y1`/`ny1` for Y.
fn lit_id(r: usize, lit: i32) -> String {
    let v = lit.unsigned_abs() as usize;
    let (name, i) = if v <= r { ("x", v) } else { ("y", v - r) };
    if lit > 0 {
        format!("{name}{i}")
    } else {
        format!("n{name}{i}")
    }
}

fn check(q: &QFormula) -> Result<()> {
    let fail = |j: usize, msg: &str| Err(Error::PreconditionViolated(format!("clause {}: {msg}", j + 1)));
    if q.r == 0 {
        return Err(Error::PreconditionViolated("need at least one X and one Y variable".into()));
    }
    for (j, c) in q.clauses.iter().enumerate() {
        if c.len() != 3 {
            return fail(j, "must have exactly three literals");
        }
        if c.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > 2 * q.r) {
            return fail(j, "literal out of range");
        }
        if (0..3).any(|a| (a + 1..3).any(|b| c[a] == c[b])) {
            return fail(j, "repeated literal");
        }
        if c.iter().filter(|&&l| l.unsigned_abs() as usize > q.r).count() < 2 {
            return fail(j, "needs at least two Y-literals");
        }
    }
    Ok(())
}

pub fn gen_from_not1in3(q: &QFormula) -> Result<Instance> {
    check(q)?;
    let (r, s) = (q.r, q.clauses.len());
    let t = 2 * r + s + 2;
    let clause_types = |lit: i32| -> Vec<usize> {
        let var = lit.unsigned_abs() as usize - 1;
        let mut idx = vec![var];
        idx.extend(q.clauses.iter().enumerate().filter(|(_, c)| c.contains(&lit)).map(|(j, _)| 2 * r + j));
        idx
    };
    let xs: Vec<String> = (1..=r as i32).map(|v| lit_id(r, v)).collect();
    let nxs: Vec<String> = (1..=r as i32).map(|v| lit_id(r, -v)).collect();
    let ys: Vec<String> = (r as i32 + 1..=2 * r as i32).map(|v| lit_id(r, v)).collect();
    let nys: Vec<String> = (r as i32 + 1..=2 * r as i32).map(|v| lit_id(r, -v)).collect();
    let ds: Vec<String> = (1..=s).map(|j| format!("d{j}")).collect();

    let mut students = Vec::new();
    for v in 1..=r as i32 {
        students.push(student(&lit_id(r, v), tv(t, &clause_types(v)), &ids(&["v", "b"])));
        students.push(student(&lit_id(r, -v), tv(t, &clause_types(-v)), &ids(&["b", "v"])));
    }
    for v in r as i32 + 1..=2 * r as i32 {
        students.push(student(&lit_id(r, v), tv(t, &clause_types(v)), &ids(&["v"])));
        students.push(student(&lit_id(r, -v), tv(t, &clause_types(-v)), &ids(&["v"])));
    }
    for (j, d) in ds.iter().enumerate() {
        students.push(student(d, tv(t, &[2 * r + j]), &ids(&["v"])));
    }
    let all_core: Vec<usize> = (0..2 * r + s).collect();
    students.push(student("d", tv(t, &all_core), &ids(&["v", "w"])));
    students.push(student("r1", tv(t, &[t - 2]), &ids(&["b", "a"])));
    students.push(student("r2", tv(t, &[t - 2, t - 1]), &ids(&["b", "w", "a"])));
    students.push(student("r3", tv(t, &[t - 1]), &ids(&["a", "b"])));

    // v: [D] d [Y] [Ȳ] [X̄] [X]; ℓ = u = 1^r 2^r 3^s 00
    let mut v_prefs = ds.clone();
    v_prefs.push("d".into());
    v_prefs.extend(ys.iter().chain(&nys).chain(&nxs).chain(&xs).cloned());
    let mut v_quota = vec![1; r];
    v_quota.extend(vec![2; r]);
    v_quota.extend(vec![3; s]);
    v_quota.extend([0, 0]);
    // b: r3 r2 r1 [X] [X̄]; ℓ = 1^r 0^{r+s+2}, u = 1^r 0^r 1^{s+2}
    let mut b_prefs = ids(&["r3", "r2", "r1"]);
    b_prefs.extend(xs.iter().chain(&nxs).cloned());
    let mut b_lower = vec![1; r];
    b_lower.extend(vec![0; r + s + 2]);
    let mut b_upper = vec![1; r];
    b_upper.extend(vec![0; r]);
    b_upper.extend(vec![1; s + 2]);
    let mut a_upper = vec![0; t - 2];
    a_upper.extend([1, 1]);

    let colleges = vec![
        college("v", strict(&v_prefs), v_quota.clone(), v_quota, (3 * r + s) as u32),
        college("w", strict(&ids(&["d", "r2"])), vec![0; t], vec![1; t], 1),
        college("a", strict(&ids(&["r1", "r2", "r3"])), vec![0; t], a_upper, 1),
        college("b", strict(&b_prefs), b_lower, b_upper, (r + 2) as u32),
    ];
    Ok(Instance { num_types: t, students, colleges })
}
