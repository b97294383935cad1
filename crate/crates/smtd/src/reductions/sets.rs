//! Single-college constructions from set problems: checking stability of a
//! given matching (exact cover), and few colleges with small capacities (set
//! cover, set packing).

use super::{college, ids, strict, student, tv, SetSystem};
use crate::error::{Error, Result};
use crate::model::{Instance, Matching, TieList};

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(m <= 24, "too many sets for exhaustive search");
    (0u32..1 << m).map(move |mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
}

fn coverage(s: &SetSystem, chosen: &[usize]) -> Vec<usize> {
    let mut c = vec![0; s.universe + 1];
    for &i in chosen {
        for &e in &s.sets[i] {
            c[e] += 1;
        }
    }
    c
}

/// Some subcollection covers every element exactly once.
pub fn exact_cover_exists(s: &SetSystem) -> bool {
    subsets(s.sets.len()).any(|c| coverage(s, &c)[1..].iter().all(|&x| x == 1))
}

/// Size of a smallest cover, if the union covers the universe.
pub fn min_set_cover(s: &SetSystem) -> Option<usize> {
    subsets(s.sets.len()).filter(|c| coverage(s, c)[1..].iter().all(|&x| x >= 1)).map(|c| c.len()).min()
}

/// Some k pairwise disjoint sets exist.
pub fn set_packing_exists(s: &SetSystem) -> bool {
    subsets(s.sets.len()).any(|c| c.len() >= s.k && coverage(s, &c)[1..].iter().all(|&x| x <= 1))
}

/// One college with quotas exactly three per element; the returned matching
/// assigns every set-student and leaves the all-types student `d` out. It is
/// blocked (by {d, w}) iff an exact cover exists.
pub fn gen_x3c_blocking_instance(s: &SetSystem) -> Result<(Instance, Matching)> {
    let n = s.universe;
    let ok = n > 0
        && n.is_multiple_of(3)
        && s.sets.iter().all(|x| x.len() == 3)
        && coverage(s, &(0..s.sets.len()).collect::<Vec<_>>())[1..].iter().all(|&c| c == 3);
    if !ok {
        return Err(Error::PreconditionViolated(
            "need |X| = 3q, 3-element sets, and every element in exactly three sets".into(),
        ));
    }
    let sids: Vec<String> = (1..=s.sets.len()).map(|i| format!("s{i}")).collect();
    let w = ids(&["w"]);
    let mut students: Vec<_> =
        s.sets.iter().zip(&sids).map(|(set, id)| student(id, tv(n, &set.iter().map(|e| e - 1).collect::<Vec<_>>()), &w)).collect();
    students.push(student("d", tv(n, &(0..n).collect::<Vec<_>>()), &w));
    let mut prefs = ids(&["d"]);
    prefs.extend(sids.iter().cloned());
    let colleges = vec![college("w", strict(&prefs), vec![3; n], vec![3; n], s.sets.len() as u32)];
    let m = Matching::new(sids.into_iter().map(|id| (id, "w".to_string())).collect());
    Ok((Instance { num_types: n, students, colleges }, m))
}

/// One college of capacity 2k; a feasible matching exists iff a cover of size
/// at most k exists.
pub fn gen_from_set_cover(s: &SetSystem) -> Result<Instance> {
    let (n, m, k) = (s.universe, s.sets.len(), s.k);
    if k == 0 || k > m || has_uncovered_element(s) {
        return Err(Error::PreconditionViolated("need 1 ≤ k ≤ number of sets and a covering union".into()));
    }
    let t = n + m + 1;
    let w = ids(&["w"]);
    let mut students = Vec::new();
    for (i, set) in s.sets.iter().enumerate() {
        let mut st: Vec<usize> = set.iter().map(|e| e - 1).collect();
        st.push(n + i);
        students.push(student(&format!("s{}", i + 1), tv(t, &st), &w));
    }
    for i in 0..m {
        let mut dt: Vec<usize> = (0..m).filter(|&j| j != i).map(|j| n + j).collect();
        dt.push(n + m);
        students.push(student(&format!("d{}", i + 1), tv(t, &dt), &w));
    }
    let prefs: Vec<String> = (1..=m).flat_map(|i| [format!("s{i}"), format!("d{i}")]).collect();
    let mut lower = vec![1; n];
    lower.extend(vec![k as u32; m + 1]);
    let colleges = vec![college("w", strict(&prefs), lower, vec![k as u32; t], 2 * k as u32)];
    Ok(Instance { num_types: t, students, colleges })
}

/// Whether some element is in no set.
fn has_uncovered_element(s: &SetSystem) -> bool {
    coverage(s, &(0..s.sets.len()).collect::<Vec<_>>())[1..].contains(&0)
}

/// Three colleges, no lower quotas, set-students tied at w: a stable matching
/// exists iff k pairwise disjoint sets exist.
pub fn gen_from_set_packing(s: &SetSystem) -> Result<Instance> {
    let (n, m, k) = (s.universe, s.sets.len(), s.k);
    if k == 0 || k > m {
        return Err(Error::PreconditionViolated("need 1 ≤ k ≤ number of sets".into()));
    }
    let t = n + 2;
    let uids: Vec<String> = (1..=m).map(|i| format!("u{i}")).collect();
    let mut students: Vec<_> = s
        .sets
        .iter()
        .zip(&uids)
        .map(|(set, id)| student(id, tv(t, &set.iter().map(|e| e - 1).collect::<Vec<_>>()), &ids(&["w"])))
        .collect();
    students.push(student("r1", tv(t, &[t - 2]), &ids(&["b", "a"])));
    students.push(student("r2", tv(t, &[t - 2, t - 1]), &ids(&["b", "w", "a"])));
    students.push(student("r3", tv(t, &[t - 1]), &ids(&["a", "b"])));
    let mut ab_upper = vec![0; n];
    ab_upper.extend([1, 1]);
    let colleges = vec![
        college("w", TieList::new(vec![uids, ids(&["r2"])]), vec![0; t], vec![1; t], k as u32),
        college("a", strict(&ids(&["r1", "r2", "r3"])), vec![0; t], ab_upper.clone(), 1),
        college("b", strict(&ids(&["r3", "r2", "r1"])), vec![0; t], ab_upper, 2),
    ];
    Ok(Instance { num_types: t, students, colleges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;
    use crate::verify::check_feasible;

    #[test]
    fn x3c_structure() {
        let s = SetSystem::new(3, vec![vec![1, 2, 3]; 3], 0).unwrap();
        let (inst, m) = gen_x3c_blocking_instance(&s).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert!(check_feasible(&inst, &m).unwrap().feasible);
        assert!(exact_cover_exists(&s));
        let bad = SetSystem::new(3, vec![vec![1, 2, 3]; 2], 0).unwrap();
        assert!(matches!(gen_x3c_blocking_instance(&bad), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn cover_structure() {
        let s = SetSystem::new(2, vec![vec![1], vec![2], vec![1, 2]], 1).unwrap();
        let inst = gen_from_set_cover(&s).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert_eq!((inst.m(), inst.capacity_max()), (1, 2));
        assert_eq!(min_set_cover(&s), Some(1));
    }

    #[test]
    fn packing_structure() {
        let s = SetSystem::new(2, vec![vec![1], vec![2]], 2).unwrap();
        let inst = gen_from_set_packing(&s).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert_eq!((inst.lower_max(), inst.m(), inst.colleges[0].capacity), (0, 3, 2));
        assert!(inst.has_ties());
        assert!(set_packing_exists(&s));
    }
}
