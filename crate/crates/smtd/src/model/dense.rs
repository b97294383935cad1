//! Index-based view of a valid instance used by the algorithms. Students and
//! colleges are numbered in input order.

use std::collections::HashMap;

use super::{validate_instance, Instance, Matching};
use crate::error::{Error, Result};

/// Student index → college index, `None` for ⊥.
pub type Assign = Vec<Option<usize>>;

pub const UNRANKED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    /// Row-major n × t type bits.
    tau: Vec<u8>,
    /// Row-major n × m: tie-group index of college w in u's list.
    srank: Vec<u32>,
    /// Row-major m × n: tie-group index of student u in w's list.
    crank: Vec<u32>,
    /// Acceptable colleges per student, best first (ties by input order).
    pub s_acc: Vec<Vec<usize>>,
    /// Acceptable students per college, best first (ties by input order).
    pub c_acc: Vec<Vec<usize>>,
    lower: Vec<u32>,
    upper: Vec<u32>,
    pub cap: Vec<u32>,
    pub sid: Vec<String>,
    pub cid: Vec<String>,
    s_index: HashMap<String, usize>,
    c_index: HashMap<String, usize>,
    /// Position of each student in ascending-id order.
    pub s_idrank: Vec<usize>,
    pub ties: bool,
    pub lower_max: u32,
}

impl Dense {
    pub fn new(inst: &Instance) -> Result<Dense> {
        let report = validate_instance(inst);
        if let Some(v) = report.first() {
            return Err(Error::InvalidInstance(format!(
                "{} violation(s); first: {} ({})",
                report.len(),
                v.detail,
                v.location
            )));
        }
        let (n, m, t) = (inst.n(), inst.m(), inst.num_types);
        let s_index: HashMap<String, usize> =
            inst.students.iter().enumerate().map(|(i, s)| (s.id.clone(), i)).collect();
        let c_index: HashMap<String, usize> =
            inst.colleges.iter().enumerate().map(|(i, c)| (c.id.clone(), i)).collect();

        let mut tau = vec![0u8; n * t];
        let mut srank = vec![UNRANKED; n * m];
        let mut crank = vec![UNRANKED; m * n];
        for (u, s) in inst.students.iter().enumerate() {
            for z in 0..t {
                tau[u * t + z] = s.types.get(z) as u8;
            }
            for (r, g) in s.prefs.groups.iter().enumerate() {
                for w in g {
                    srank[u * m + c_index[w]] = r as u32;
                }
            }
        }
        let mut lower = Vec::with_capacity(m * t);
        let mut upper = Vec::with_capacity(m * t);
        for (w, c) in inst.colleges.iter().enumerate() {
            for (r, g) in c.prefs.groups.iter().enumerate() {
                for u in g {
                    crank[w * n + s_index[u]] = r as u32;
                }
            }
            lower.extend_from_slice(&c.lower.0);
            upper.extend_from_slice(&c.upper.0);
        }
        let s_acc = (0..n)
            .map(|u| {
                let mut v: Vec<usize> = (0..m).filter(|&w| srank[u * m + w] != UNRANKED).collect();
                v.sort_by_key(|&w| (srank[u * m + w], w));
                v
            })
            .collect();
        let c_acc = (0..m)
            .map(|w| {
                let mut v: Vec<usize> = (0..n).filter(|&u| crank[w * n + u] != UNRANKED).collect();
                v.sort_by_key(|&u| (crank[w * n + u], u));
                v
            })
            .collect();
        let mut by_id: Vec<usize> = (0..n).collect();
        by_id.sort_by(|&a, &b| inst.students[a].id.cmp(&inst.students[b].id));
        let mut s_idrank = vec![0; n];
        for (pos, &u) in by_id.iter().enumerate() {
            s_idrank[u] = pos;
        }
        Ok(Dense {
            n,
            m,
            t,
            tau,
            srank,
            crank,
            s_acc,
            c_acc,
            lower,
            upper,
            cap: inst.colleges.iter().map(|c| c.capacity).collect(),
            sid: inst.students.iter().map(|s| s.id.clone()).collect(),
            cid: inst.colleges.iter().map(|c| c.id.clone()).collect(),
            s_index,
            c_index,
            s_idrank,
            ties: inst.has_ties(),
            lower_max: inst.lower_max(),
        })
    }

    #[inline]
    pub fn tau(&self, u: usize) -> &[u8] {
        &self.tau[u * self.t..(u + 1) * self.t]
    }

    #[inline]
    pub fn lower(&self, w: usize) -> &[u32] {
        &self.lower[w * self.t..(w + 1) * self.t]
    }

    #[inline]
    pub fn upper(&self, w: usize) -> &[u32] {
        &self.upper[w * self.t..(w + 1) * self.t]
    }

    #[inline]
    pub fn accepts(&self, u: usize, w: usize) -> bool {
        self.srank[u * self.m + w] != UNRANKED
    }

    /// Rank of `w` (or ⊥ = `None`, ranked below everything) in u's list.
    #[inline]
    pub fn srank(&self, u: usize, w: Option<usize>) -> u32 {
        match w {
            Some(w) => self.srank[u * self.m + w],
            None => UNRANKED,
        }
    }

    #[inline]
    pub fn crank(&self, w: usize, u: usize) -> u32 {
        self.crank[w * self.n + u]
    }

    /// u strictly prefers `a` to `b` (⊥ = `None`).
    #[inline]
    pub fn s_prefers(&self, u: usize, a: Option<usize>, b: Option<usize>) -> bool {
        a.is_some() && self.srank(u, a) < self.srank(u, b)
    }

    /// w strictly prefers `a` to `b`.
    #[inline]
    pub fn c_prefers(&self, w: usize, a: usize, b: usize) -> bool {
        self.crank(w, a) < self.crank(w, b)
    }

    pub fn student_index(&self, id: &str) -> Option<usize> {
        self.s_index.get(id).copied()
    }

    pub fn college_index(&self, id: &str) -> Option<usize> {
        self.c_index.get(id).copied()
    }

    pub fn upper_max(&self) -> u32 {
        self.upper.iter().copied().max().unwrap_or(0)
    }

    pub fn cap_max(&self) -> u32 {
        self.cap.iter().copied().max().unwrap_or(0)
    }

    /// Converts a matching, rejecting unknown ids, unacceptable pairs and
    /// students matched twice.
    pub fn assign_of(&self, mat: &Matching) -> Result<Assign> {
        let mut a = vec![None; self.n];
        for (s, c) in mat.pairs() {
            let unacceptable = || Error::UnacceptablePair { student: s.clone(), college: c.clone() };
            let u = self.student_index(s).ok_or_else(unacceptable)?;
            let w = self.college_index(c).ok_or_else(unacceptable)?;
            if !self.accepts(u, w) {
                return Err(unacceptable());
            }
            if a[u].replace(w).is_some() {
                return Err(Error::DuplicateStudent(s.clone()));
            }
        }
        Ok(a)
    }

    pub fn matching_of(&self, a: &[Option<usize>]) -> Matching {
        Matching::new(
            a.iter()
                .enumerate()
                .filter_map(|(u, w)| w.map(|w| (self.sid[u].clone(), self.cid[w].clone())))
                .collect(),
        )
    }

    /// M(w) for every college, students in input order.
    pub fn members(&self, a: &[Option<usize>]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (u, w) in a.iter().enumerate() {
            if let Some(w) = *w {
                out[w].push(u);
            }
        }
        out
    }

    /// Σ τ over `set`.
    pub fn type_sum(&self, set: impl IntoIterator<Item = usize>) -> Vec<u32> {
        let mut c = vec![0u32; self.t];
        for u in set {
            for (x, &b) in c.iter_mut().zip(self.tau(u)) {
                *x += b as u32;
            }
        }
        c
    }

    /// Capacity and both quota vectors hold for college `w` given its type
    /// counts and size.
    #[inline]
    pub fn fits(&self, w: usize, counts: &[u32], size: usize) -> bool {
        size as u32 <= self.cap[w]
            && counts.iter().zip(self.lower(w)).all(|(c, l)| c >= l)
            && counts.iter().zip(self.upper(w)).all(|(c, h)| c <= h)
    }

    /// Capacity and upper quotas only.
    #[inline]
    pub fn fits_above(&self, w: usize, counts: &[u32], size: usize) -> bool {
        size as u32 <= self.cap[w] && counts.iter().zip(self.upper(w)).all(|(c, h)| c <= h)
    }

    pub fn college_feasible(&self, w: usize, set: &[usize]) -> bool {
        self.fits(w, &self.type_sum(set.iter().copied()), set.len())
    }

    pub fn is_feasible(&self, a: &[Option<usize>]) -> bool {
        self.members(a).iter().enumerate().all(|(w, set)| self.college_feasible(w, set))
    }

    /// Same type vector.
    #[inline]
    pub fn same_types(&self, a: usize, b: usize) -> bool {
        self.tau(a) == self.tau(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex1_m1};

    #[test]
    fn dense_view_of_running_example() {
        let d = Dense::new(&ex1()).unwrap();
        assert_eq!((d.n, d.m, d.t), (4, 2, 2));
        assert_eq!(d.s_acc[2], vec![1, 0]);
        assert_eq!(d.c_acc[1], vec![0, 2, 3, 1]);
        assert!(d.c_prefers(0, 2, 0));
        assert!(d.s_prefers(3, Some(1), None));
        let a = d.assign_of(&ex1_m1()).unwrap();
        assert_eq!(a, vec![Some(0), Some(1), Some(0), Some(1)]);
        assert!(d.is_feasible(&a));
        assert_eq!(d.matching_of(&a), ex1_m1());
    }

    #[test]
    fn rejects_invalid_instance() {
        let mut inst = ex1();
        inst.colleges[0].capacity = 0;
        assert!(matches!(Dense::new(&inst), Err(Error::InvalidInstance(_))));
    }
}
