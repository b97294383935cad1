use super::feasible::dense_report;
use super::{for_each_subset, BlockingCertificate, CertKind, StabilityMode, Strategy};
use crate::error::{Error, Result};
use crate::model::{Dense, Instance, Matching, TypeVector};

/// M(w) and Σ τ over M(w) for every college.
#[derive(Clone, Debug)]
pub struct Profile {
    pub members: Vec<Vec<usize>>,
    pub counts: Vec<Vec<u32>>,
}

impl Profile {
    pub fn new(d: &Dense, a: &[Option<usize>]) -> Profile {
        let members = d.members(a);
        let counts = members.iter().map(|s| d.type_sum(s.iter().copied())).collect();
        Profile { members, counts }
    }
}

/// Conditions (i) and (ii) plus {u, w} ∉ M.
#[inline]
fn pair_eligible(d: &Dense, a: &[Option<usize>], u: usize, w: usize) -> bool {
    d.accepts(u, w) && a[u] != Some(w) && d.s_prefers(u, Some(w), a[u])
}

/// Whether M(w) \ S ∪ {u} respects w's capacity and quotas.
#[inline]
fn swap_fits(d: &Dense, p: &Profile, u: usize, w: usize, s: &[usize]) -> bool {
    let mut c = p.counts[w].clone();
    for &v in s {
        for (x, &b) in c.iter_mut().zip(d.tau(v)) {
            *x -= b as u32;
        }
    }
    for (x, &b) in c.iter_mut().zip(d.tau(u)) {
        *x += b as u32;
    }
    d.fits(w, &c, p.members[w].len() - s.len() + 1)
}

/// Whether u's current college stays feasible once u leaves.
fn vacated_ok(d: &Dense, a: &[Option<usize>], p: &Profile, u: usize) -> bool {
    let Some(w0) = a[u] else { return true };
    p.counts[w0].iter().zip(d.tau(u)).zip(d.lower(w0)).all(|((&c, &b), &l)| c - b as u32 >= l)
}

/// Candidate displaced students for the pair {u, w}, sorted by id.
fn candidates(d: &Dense, p: &Profile, u: usize, w: usize, strategy: Strategy) -> Vec<usize> {
    let worse = p.members[w].iter().copied().filter(|&v| d.c_prefers(w, u, v));
    let mut cand: Vec<usize> = match strategy {
        Strategy::Exhaustive => worse.collect(),
        Strategy::Restricted => {
            // one canonical worst member per type vector present in M(w)
            let mut picks: Vec<usize> = Vec::new();
            for &v in &p.members[w] {
                match picks.iter_mut().find(|x| d.same_types(**x, v)) {
                    None => picks.push(v),
                    Some(x) => {
                        let (rx, rv) = (d.crank(w, *x), d.crank(w, v));
                        if rv > rx || (rv == rx && d.s_idrank[v] < d.s_idrank[*x]) {
                            *x = v;
                        }
                    }
                }
            }
            picks.into_iter().filter(|&v| d.c_prefers(w, u, v)).collect()
        }
    };
    cand.sort_by_key(|&v| d.s_idrank[v]);
    cand
}

/// Smallest (then lexicographically first) witness for {u, w}, or `None` if
/// the pair does not block. Witness members are sorted by id.
pub fn dense_pair_witness(
    d: &Dense,
    a: &[Option<usize>],
    p: &Profile,
    u: usize,
    w: usize,
    mode: StabilityMode,
    strategy: Strategy,
) -> Option<Vec<usize>> {
    if !pair_eligible(d, a, u, w) {
        return None;
    }
    if mode == StabilityMode::DBlocking && !vacated_ok(d, a, p, u) {
        return None;
    }
    let cand = candidates(d, p, u, w, strategy);
    let mut found = None;
    let mut buf = Vec::with_capacity(cand.len());
    for_each_subset(cand.len(), cand.len(), |idx| {
        buf.clear();
        buf.extend(idx.iter().map(|&i| cand[i]));
        if swap_fits(d, p, u, w, &buf) {
            found = Some(buf.clone());
            true
        } else {
            false
        }
    });
    found
}

/// First blocking pair in canonical order: students, then colleges, in input order.
pub fn dense_find_blocking(
    d: &Dense,
    a: &[Option<usize>],
    mode: StabilityMode,
    strategy: Strategy,
) -> Option<(usize, usize, Vec<usize>)> {
    let p = Profile::new(d, a);
    for u in 0..d.n {
        for w in 0..d.m {
            if let Some(s) = dense_pair_witness(d, a, &p, u, w, mode, strategy) {
                return Some((u, w, s));
            }
        }
    }
    None
}

pub(crate) fn certificate(d: &Dense, u: usize, w: usize, s: &[usize], mode: StabilityMode) -> BlockingCertificate {
    BlockingCertificate {
        kind: match mode {
            StabilityMode::Strict => CertKind::Strict,
            StabilityMode::DBlocking => CertKind::DBlocking,
        },
        student: Some(d.sid[u].clone()),
        college: d.cid[w].clone(),
        witness: s.iter().map(|&v| d.sid[v].clone()).collect(),
    }
}

/// Searches for a blocking pair of a feasible matching.
pub fn find_blocking_pair(
    inst: &Instance,
    mat: &Matching,
    mode: StabilityMode,
    strategy: Strategy,
) -> Result<Option<BlockingCertificate>> {
    let d = Dense::new(inst)?;
    let a = d.assign_of(mat)?;
    if !dense_report(&d, &a).feasible {
        return Err(Error::InfeasibleInput);
    }
    Ok(dense_find_blocking(&d, &a, mode, strategy).map(|(u, w, s)| certificate(&d, u, w, &s, mode)))
}

/// Witness for one specific pair, if it blocks.
pub fn pair_witness(
    inst: &Instance,
    mat: &Matching,
    student: &str,
    college: &str,
    mode: StabilityMode,
    strategy: Strategy,
) -> Result<Option<Vec<String>>> {
    let d = Dense::new(inst)?;
    let a = d.assign_of(mat)?;
    if !dense_report(&d, &a).feasible {
        return Err(Error::InfeasibleInput);
    }
    let (Some(u), Some(w)) = (d.student_index(student), d.college_index(college)) else {
        return Ok(None);
    };
    let p = Profile::new(&d, &a);
    Ok(dense_pair_witness(&d, &a, &p, u, w, mode, strategy).map(|s| s.iter().map(|&v| d.sid[v].clone()).collect()))
}

/// Checks conditions (i)–(iv) of a blocking pair for the given witness.
/// Only the receiving college's feasibility is considered.
pub fn witness_valid(inst: &Instance, mat: &Matching, student: &str, college: &str, witness: &[&str]) -> Result<bool> {
    let d = Dense::new(inst)?;
    let a = d.assign_of(mat)?;
    let (Some(u), Some(w)) = (d.student_index(student), d.college_index(college)) else {
        return Ok(false);
    };
    let mut s = Vec::with_capacity(witness.len());
    for id in witness {
        match d.student_index(id) {
            Some(v) if a[v] == Some(w) && !s.contains(&v) => s.push(v),
            _ => return Err(Error::WitnessNotSubset(college.to_string())),
        }
    }
    if !pair_eligible(&d, &a, u, w) || !s.iter().all(|&v| d.c_prefers(w, u, v)) {
        return Ok(false);
    }
    Ok(swap_fits(&d, &Profile::new(&d, &a), u, w, &s))
}

/// worst(M, w, τ) and S(M, w, τ) for one college and one type vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstSet {
    pub college: String,
    pub types: TypeVector,
    /// Least-preferred assignees of this type vector, sorted by id.
    pub members: Vec<String>,
    /// All assignees of this type vector, sorted by id.
    pub all_of_type: Vec<String>,
}

/// Worst sets for every college and every type vector present in M(w);
/// colleges in input order, type vectors ascending.
pub fn worst_sets(inst: &Instance, mat: &Matching) -> Result<Vec<WorstSet>> {
    let d = Dense::new(inst)?;
    let a = d.assign_of(mat)?;
    let mut out = Vec::new();
    for (w, set) in d.members(&a).into_iter().enumerate() {
        let mut types: Vec<&[u8]> = set.iter().map(|&v| d.tau(v)).collect();
        types.sort();
        types.dedup();
        for tau in types {
            let mut all: Vec<usize> = set.iter().copied().filter(|&v| d.tau(v) == tau).collect();
            let worst_rank = all.iter().map(|&v| d.crank(w, v)).max().unwrap();
            all.sort_by_key(|&v| d.s_idrank[v]);
            let ids = |xs: &mut dyn Iterator<Item = usize>| xs.map(|v| d.sid[v].clone()).collect::<Vec<_>>();
            out.push(WorstSet {
                college: d.cid[w].clone(),
                types: TypeVector::from_bits(tau.iter().map(|&b| b == 1).collect()),
                members: ids(&mut all.iter().copied().filter(|&v| d.crank(w, v) == worst_rank)),
                all_of_type: ids(&mut all.iter().copied()),
            });
        }
    }
    Ok(out)
}
