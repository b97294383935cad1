//! Polynomial preprocessing for instances with few students: at most 2^n
//! types and n² + n colleges remain.

use std::collections::HashSet;

use crate::error::Result;
use crate::model::{validate_instance, College, CountVector, Instance, Student, TypeVector};

#[derive(Clone, Debug, PartialEq)]
pub enum Kernel {
    /// Equivalent smaller instance (same ids).
    Reduced(Instance),
    /// No feasible and stable matching exists.
    No(String),
}

pub fn kernelize_few_students(inst: &Instance) -> Result<Kernel> {
    if let Some(v) = validate_instance(inst).first() {
        return Err(crate::Error::InvalidInstance(v.detail.clone()));
    }
    let n = inst.n();
    let t = inst.num_types;

    // (a) merge types held by exactly the same students
    let support = |z: usize| inst.students.iter().map(|s| s.types.get(z)).collect::<Vec<bool>>();
    let mut classes: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for z in 0..t {
        let sup = support(z);
        match classes.iter_mut().find(|(s, _)| *s == sup) {
            Some((_, zs)) => zs.push(z),
            None => classes.push((sup, vec![z])),
        }
    }
    let students: Vec<Student> = inst
        .students
        .iter()
        .map(|s| Student {
            id: s.id.clone(),
            types: TypeVector::from_bits(classes.iter().map(|(_, zs)| s.types.get(zs[0])).collect()),
            prefs: s.prefs.clone(),
        })
        .collect();
    let mut colleges = Vec::with_capacity(inst.m());
    for c in &inst.colleges {
        let lower: Vec<u32> = classes.iter().map(|(_, zs)| zs.iter().map(|&z| c.lower.0[z]).max().unwrap()).collect();
        let upper: Vec<u32> = classes.iter().map(|(_, zs)| zs.iter().map(|&z| c.upper.0[z]).min().unwrap()).collect();
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Ok(Kernel::No(format!("merged quotas of {} are contradictory", c.id)));
        }
        colleges.push(College {
            id: c.id.clone(),
            prefs: c.prefs.clone(),
            lower: CountVector(lower),
            upper: CountVector(upper),
            capacity: c.capacity,
        });
    }
    let mut k = Instance { num_types: classes.len(), students, colleges };

    // (b) every college with a lower quota needs its own student
    let needy = k.colleges.iter().filter(|c| c.lower.max_entry() > 0).count();
    if needy > n {
        return Ok(Kernel::No(format!("{needy} colleges with lower quotas but only {n} students")));
    }

    // (c) drop pairs where the student alone exceeds an upper quota
    let mut removed: HashSet<(usize, usize)> = HashSet::new();
    for (ui, s) in k.students.iter().enumerate() {
        for (wi, c) in k.colleges.iter().enumerate() {
            if s.prefs.contains(&c.id) && !s.types.count_vector().le(&c.upper) {
                removed.insert((ui, wi));
            }
        }
    }

    // (d) keep each student's n best zero-lower colleges
    for (ui, s) in k.students.iter().enumerate() {
        let mut open: Vec<(usize, usize)> = k
            .colleges
            .iter()
            .enumerate()
            .filter(|(wi, c)| c.lower.max_entry() == 0 && !removed.contains(&(ui, *wi)))
            .filter_map(|(wi, c)| s.prefs.rank_of(&c.id).map(|r| (r, wi)))
            .collect();
        open.sort();
        for &(_, wi) in open.iter().skip(n) {
            removed.insert((ui, wi));
        }
    }
    let mut removed: Vec<(usize, usize)> = removed.into_iter().collect();
    removed.sort();
    for (ui, wi) in removed {
        let (sid, cid) = (k.students[ui].id.clone(), k.colleges[wi].id.clone());
        k.students[ui].prefs.remove(&cid);
        k.colleges[wi].prefs.remove(&sid);
    }

    // (e) colleges and students nobody can be matched with
    if let Some(c) = k.colleges.iter().find(|c| c.prefs.is_empty() && c.lower.max_entry() > 0) {
        return Ok(Kernel::No(format!("{} cannot meet its lower quota", c.id)));
    }
    k.colleges.retain(|c| !c.prefs.is_empty());
    k.students.retain(|s| !s.prefs.is_empty());

    // keep the reduced instance within the value ranges of a valid instance
    let n2 = k.n() as u32;
    for c in &mut k.colleges {
        if c.lower.max_entry() > n2 {
            return Ok(Kernel::No(format!("{} needs more students than remain", c.id)));
        }
        c.capacity = c.capacity.min(n2);
        c.upper.0.iter_mut().for_each(|u| *u = (*u).min(n2));
    }
    Ok(Kernel::Reduced(k))
}
