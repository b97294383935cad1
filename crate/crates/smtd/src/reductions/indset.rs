//! Four colleges, no lower quotas, upper quotas at most two: stability
//! encodes Independent Set.

use super::{college, ids, strict, student, tv, Graph};
use crate::error::{Error, Result};
use crate::model::Instance;

/// Largest independent set size, by enumeration.
pub fn max_independent_set(g: &Graph) -> usize {
    assert!(g.n <= 24, "too many vertices for exhaustive search");
    (0u32..1 << g.n)
        .filter(|&mask| g.edges.iter().all(|&(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 0))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn gen_from_independent_set(g: &Graph, k: usize) -> Result<Instance> {
    let (n, m) = (g.n, g.edges.len());
    if n == 0 || k > n {
        return Err(Error::PreconditionViolated(format!("need 1 ≤ |V| and k ≤ |V| (|V| = {n}, k = {k})")));
    }
    let t = 2 * n + m + 2;
    let mut students = Vec::new();
    for i in 0..n {
        let k1 = i + 1;
        let mut vt = vec![2 * i];
        vt.extend(g.edges.iter().enumerate().filter(|(_, &(a, b))| a == i || b == i).map(|(j, _)| 2 * n + j));
        students.push(student(&format!("v{k1}"), tv(t, &vt), &ids(&["w", "p"])));
        students.push(student(&format!("u{k1}"), tv(t, &[2 * i + 1]), &ids(&["p", "w"])));
        students.push(student(&format!("x{k1}"), tv(t, &[2 * i, 2 * i + 1]), &ids(&["w"])));
        students.push(student(&format!("y{k1}"), tv(t, &[2 * i, 2 * i + 1]), &ids(&["p"])));
    }
    students.push(student("r1", tv(t, &[t - 2]), &ids(&["b", "a"])));
    students.push(student("r2", tv(t, &[t - 2, t - 1]), &ids(&["b", "w", "a"])));
    students.push(student("r3", tv(t, &[t - 1]), &ids(&["a", "b"])));

    let mut w_prefs: Vec<String> =
        (1..=n).flat_map(|i| [format!("u{i}"), format!("x{i}"), format!("v{i}")]).collect();
    w_prefs.push("r2".into());
    let p_prefs: Vec<String> = (1..=n).flat_map(|i| [format!("v{i}"), format!("y{i}"), format!("u{i}")]).collect();
    let mut p_upper = vec![1; 2 * n];
    p_upper.extend(vec![2; m]);
    p_upper.extend([0, 0]);
    let mut ab_upper = vec![0; t - 2];
    ab_upper.extend([1, 1]);
    let colleges = vec![
        college("w", strict(&w_prefs), vec![0; t], vec![1; t], (n + k) as u32),
        college("p", strict(&p_prefs), vec![0; t], p_upper, (2 * n - k) as u32),
        college("a", strict(&ids(&["r1", "r2", "r3"])), vec![0; t], ab_upper.clone(), 1),
        college("b", strict(&ids(&["r3", "r2", "r1"])), vec![0; t], ab_upper, 2),
    ];
    Ok(Instance { num_types: t, students, colleges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn structure() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = gen_from_independent_set(&g, 1).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert_eq!((inst.m(), inst.lower_max(), inst.upper_max()), (4, 0, 2));
        assert_eq!(inst.n(), 4 * 3 + 3);
        assert_eq!(max_independent_set(&g), 1);
    }
}
