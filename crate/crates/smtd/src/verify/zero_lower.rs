use super::blocking::{certificate, Profile};
use super::feasible::dense_report;
use super::{BlockingCertificate, StabilityMode};
use crate::error::{Error, Result};
use crate::model::{Dense, Instance, Matching};

/// Polynomial stability test for instances without lower quotas.
///
/// A pair {u, w} with w ≻_u M(u) blocks unless τ_u plus the types of the
/// assignees w likes at least as much as u exceeds u_w, or w is full of such
/// assignees. The reported witness is an inclusion-minimal subset of the
/// strictly worse assignees, found greedily.
pub fn dense_zero_lower(d: &Dense, a: &[Option<usize>]) -> Option<(usize, usize, Vec<usize>)> {
    let p = Profile::new(d, a);
    let mut sum = vec![0u32; d.t];
    for u in 0..d.n {
        for w in 0..d.m {
            if !d.accepts(u, w) || a[u] == Some(w) || !d.s_prefers(u, Some(w), a[u]) {
                continue;
            }
            let mw = &p.members[w];
            sum.iter_mut().zip(d.tau(u)).for_each(|(x, &b)| *x = b as u32);
            let mut kept = 0;
            for &v in mw {
                if !d.c_prefers(w, u, v) {
                    kept += 1;
                    sum.iter_mut().zip(d.tau(v)).for_each(|(x, &b)| *x += b as u32);
                }
            }
            if sum.iter().zip(d.upper(w)).any(|(c, h)| c > h) {
                continue;
            }
            if mw.len() as u32 == d.cap[w] && kept == mw.len() {
                continue;
            }
            // start from all strictly worse assignees; keep w's favourites when possible
            let mut witness: Vec<usize> = mw.iter().copied().filter(|&v| d.c_prefers(w, u, v)).collect();
            witness.sort_by_key(|&v| (d.crank(w, v), d.s_idrank[v]));
            let mut i = 0;
            while i < witness.len() {
                let v = witness.remove(i);
                if !fits_without(d, &p, u, w, &witness) {
                    witness.insert(i, v);
                    i += 1;
                }
            }
            witness.sort_by_key(|&v| d.s_idrank[v]);
            return Some((u, w, witness));
        }
    }
    None
}

fn fits_without(d: &Dense, p: &Profile, u: usize, w: usize, s: &[usize]) -> bool {
    let mut c = p.counts[w].clone();
    for &v in s {
        c.iter_mut().zip(d.tau(v)).for_each(|(x, &b)| *x -= b as u32);
    }
    c.iter_mut().zip(d.tau(u)).for_each(|(x, &b)| *x += b as u32);
    d.fits_above(w, &c, p.members[w].len() - s.len() + 1)
}

/// Fast-path stability check; requires every lower quota to be zero. Pairs
/// are scanned in the same canonical order as
/// [`find_blocking_pair`](super::find_blocking_pair).
pub fn is_stable_zero_lower(inst: &Instance, mat: &Matching) -> Result<Option<BlockingCertificate>> {
    let d = Dense::new(inst)?;
    if d.lower_max > 0 {
        return Err(Error::NonZeroLowerQuota);
    }
    let a = d.assign_of(mat)?;
    if !dense_report(&d, &a).feasible {
        return Err(Error::InfeasibleInput);
    }
    Ok(dense_zero_lower(&d, &a).map(|(u, w, s)| certificate(&d, u, w, &s, StabilityMode::Strict)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex1_m2, ex1_zero_lower};
    use crate::verify::witness_valid;

    #[test]
    fn m2_without_lower_quotas() {
        let inst = ex1_zero_lower();
        let c = is_stable_zero_lower(&inst, &ex1_m2()).unwrap().unwrap();
        assert_eq!((c.student.as_deref(), c.college.as_str()), (Some("u1"), "w1"));
        assert_eq!(c.witness, vec!["u2"]);
        let w: Vec<&str> = c.witness.iter().map(String::as_str).collect();
        assert!(witness_valid(&inst, &ex1_m2(), "u1", "w1", &w).unwrap());
    }

    #[test]
    fn everyone_at_top_choice() {
        let doc = r#"{"num_types":1,"students":[{"id":"a","types":[0],"prefs":[["x"],["y"]]},
            {"id":"b","types":[0],"prefs":[["y"]]}],
            "colleges":[{"id":"x","prefs":[["a"]],"lower":[0],"upper":[1],"capacity":1},
                        {"id":"y","prefs":[["b"],["a"]],"lower":[0],"upper":[1],"capacity":1}]}"#;
        let inst = crate::model::parse_instance(doc).unwrap();
        let m = Matching::from_strs(&[("a", "x"), ("b", "y")]);
        assert_eq!(is_stable_zero_lower(&inst, &m).unwrap(), None);
    }

    #[test]
    fn rejects_lower_quotas() {
        assert_eq!(is_stable_zero_lower(&ex1(), &ex1_m2()), Err(Error::NonZeroLowerQuota));
    }
}
