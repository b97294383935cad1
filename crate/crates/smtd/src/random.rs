//! Seeded random instances and feasible matchings for property suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::model::{College, CountVector, Instance, Student, TieList, TypeVector};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_n: usize,
    pub max_m: usize,
    pub max_t: usize,
    /// Probability that a list entry joins the previous tie group.
    pub ties: f64,
    /// Probability that a student–college pair is mutually acceptable.
    pub accept: f64,
    /// Largest lower-quota entry drawn; 0 gives ℓ∞ = 0 instances.
    pub lower_max: u32,
    pub cap_max: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_n: 6, max_m: 3, max_t: 3, ties: 0.0, accept: 0.7, lower_max: 1, cap_max: 3 }
    }
}

fn tie_list(rng: &mut Rng64, mut ids: Vec<String>, ties: f64) -> TieList {
    ids.shuffle(rng);
    let mut groups: Vec<Vec<String>> = Vec::new();
    for id in ids {
        match groups.last_mut() {
            Some(g) if rng.gen_bool(ties) => g.push(id),
            _ => groups.push(vec![id]),
        }
    }
    TieList::new(groups)
}

/// A valid instance: symmetric acceptability, nonempty lists, capacities in
/// [1, min(n, cap_max)], upper entries in [0, q_w], lower entries in
/// [0, min(u_w[z], lower_max)].
pub fn random_instance(rng: &mut Rng64, p: &RandomParams) -> Instance {
    let n = rng.gen_range(1..=p.max_n.max(1));
    let m = rng.gen_range(1..=p.max_m.max(1));
    let t = rng.gen_range(1..=p.max_t.max(1));
    let mut acc = vec![vec![false; m]; n];
    for row in acc.iter_mut() {
        for x in row.iter_mut() {
            *x = rng.gen_bool(p.accept);
        }
    }
    for u in 0..n {
        if !acc[u].iter().any(|&x| x) {
            acc[u][rng.gen_range(0..m)] = true;
        }
    }
    for w in 0..m {
        if !(0..n).any(|u| acc[u][w]) {
            acc[rng.gen_range(0..n)][w] = true;
        }
    }
    let sid = |u: usize| format!("s{}", u + 1);
    let cid = |w: usize| format!("c{}", w + 1);
    let students = (0..n)
        .map(|u| {
            let bits = (0..t).map(|_| rng.gen_bool(0.5)).collect();
            let colleges = (0..m).filter(|&w| acc[u][w]).map(cid).collect();
            Student { id: sid(u), types: TypeVector::from_bits(bits), prefs: tie_list(rng, colleges, p.ties) }
        })
        .collect();
    let colleges = (0..m)
        .map(|w| {
            let cap = rng.gen_range(1..=p.cap_max.max(1).min(n as u32));
            let upper: Vec<u32> = (0..t).map(|_| rng.gen_range(0..=cap)).collect();
            let lower = upper.iter().map(|&h| rng.gen_range(0..=h.min(p.lower_max))).collect();
            let ss = (0..n).filter(|&u| acc[u][w]).map(sid).collect();
            College {
                id: cid(w),
                prefs: tie_list(rng, ss, p.ties),
                lower: CountVector(lower),
                upper: CountVector(upper),
                capacity: cap,
            }
        })
        .collect();
    Instance { num_types: t, students, colleges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn instances_are_valid_and_reproducible() {
        let p = RandomParams { ties: 0.3, ..Default::default() };
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..200 {
            let x = random_instance(&mut a, &p);
            assert!(validate_instance(&x).is_empty(), "{x:?}");
            assert_eq!(x, random_instance(&mut b, &p));
        }
    }

    #[test]
    fn zero_lower() {
        let p = RandomParams { lower_max: 0, ..Default::default() };
        let mut r = rng(1);
        assert!((0..100).all(|_| random_instance(&mut r, &p).lower_max() == 0));
    }
}
