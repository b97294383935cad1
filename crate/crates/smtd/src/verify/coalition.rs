use super::feasible::dense_report;
use super::{for_each_subset, BlockingCertificate, CertKind};
use crate::error::{Error, Result};
use crate::model::{Dense, Instance, Matching};

/// First blocking coalition in canonical order (colleges in input order,
/// coalitions by size then lexicographic ids). The coalition is returned in
/// the college's preference order. Assumes strict preferences.
pub fn dense_find_coalition(d: &Dense, a: &[Option<usize>]) -> Option<(usize, Vec<usize>)> {
    let members = d.members(a);
    for w in 0..d.m {
        let mut current = members[w].clone();
        current.sort_by_key(|&v| d.crank(w, v));
        // students who could join: current assignees and those preferring w
        let mut pool: Vec<usize> = d.c_acc[w]
            .iter()
            .copied()
            .filter(|&u| a[u] == Some(w) || d.s_prefers(u, Some(w), a[u]))
            .collect();
        pool.sort_by_key(|&u| d.s_idrank[u]);
        let lo = current.len().max(1);
        let hi = (d.cap[w] as usize).min(pool.len());
        if lo > hi {
            continue;
        }
        let mut found = None;
        let mut buf = Vec::new();
        for_each_subset(pool.len(), hi, |idx| {
            if idx.len() < lo {
                return false;
            }
            buf.clear();
            buf.extend(idx.iter().map(|&i| pool[i]));
            if !d.fits(w, &d.type_sum(buf.iter().copied()), buf.len()) {
                return false;
            }
            buf.sort_by_key(|&v| d.crank(w, v));
            let mut strict = buf.len() > current.len();
            for (x, y) in buf.iter().zip(&current) {
                let (rx, ry) = (d.crank(w, *x), d.crank(w, *y));
                if rx > ry {
                    return false;
                }
                strict |= rx < ry;
            }
            if strict {
                found = Some(buf.clone());
            }
            strict
        });
        if let Some(c) = found {
            return Some((w, c));
        }
    }
    None
}

/// Searches for a blocking coalition; requires strict preferences and a
/// feasible matching.
pub fn find_blocking_coalition(inst: &Instance, mat: &Matching) -> Result<Option<BlockingCertificate>> {
    let d = Dense::new(inst)?;
    if d.ties {
        return Err(Error::TiesPresent);
    }
    let a = d.assign_of(mat)?;
    if !dense_report(&d, &a).feasible {
        return Err(Error::InfeasibleInput);
    }
    Ok(dense_find_coalition(&d, &a).map(|(w, c)| BlockingCertificate {
        kind: CertKind::Coalition,
        student: None,
        college: d.cid[w].clone(),
        witness: c.iter().map(|&v| d.sid[v].clone()).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex1_m1};
    use crate::model::parse_instance;

    #[test]
    fn top_choice_held() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[0],"prefs":[["w"]]},
            {"id":"v","types":[0],"prefs":[["w"]]}],
            "colleges":[{"id":"w","prefs":[["u"],["v"]],"lower":[0],"upper":[1],"capacity":1}]}"#;
        let inst = parse_instance(doc).unwrap();
        let m = Matching::from_strs(&[("u", "w")]);
        assert_eq!(find_blocking_coalition(&inst, &m).unwrap(), None);
        // the worse student alone is replaced by the better one
        let m = Matching::from_strs(&[("v", "w")]);
        let c = find_blocking_coalition(&inst, &m).unwrap().unwrap();
        assert_eq!(c.witness, vec!["u"]);
    }

    #[test]
    fn ties_rejected() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[0],"prefs":[["w"]]},
            {"id":"v","types":[0],"prefs":[["w"]]}],
            "colleges":[{"id":"w","prefs":[["u","v"]],"lower":[0],"upper":[1],"capacity":1}]}"#;
        let inst = parse_instance(doc).unwrap();
        assert_eq!(find_blocking_coalition(&inst, &Matching::default()), Err(Error::TiesPresent));
    }

    #[test]
    fn running_example_m1() {
        // w2 can trade {u2, u4} for {u3} only with a smaller set, which is not a coalition
        let c = find_blocking_coalition(&ex1(), &ex1_m1()).unwrap();
        assert!(c.is_none_or(|c| c.witness.len() >= 2));
    }
}
