use proptest::prelude::*;
use rand::seq::SliceRandom;

use smtd::model::{
    compute_type_groups, parse_instance, parse_matching, serialize_instance, serialize_matching, validate_instance,
    Instance, Matching, TypeVector,
};
use smtd::random::{random_instance, rng, RandomParams};
use smtd::reductions::{
    gen_from_independent_set, gen_from_sat22, gen_from_set_cover, gen_from_set_packing, max_independent_set,
    parse_dimacs, parse_graph, sat22_occurrences_ok, CnfFormula, Graph, Sat22Variant, SetSystem,
};
use smtd::solvers::{
    enumerate_feasible, solve_auto, solve_bruteforce, solve_dp_few_colleges_types, solve_few_students,
    solve_xp_small_capacity, SolveMode, SolveOptions, DEFAULT_BUDGET,
};
use smtd::verify::{check_feasible, find_blocking_pair, witness_valid, StabilityMode, Strategy};

fn instance(seed: u64, ties: f64, lower_max: u32) -> Instance {
    random_instance(&mut rng(seed), &RandomParams { ties, lower_max, ..Default::default() })
}

fn feasible_matchings(inst: &Instance) -> Vec<Matching> {
    let mut all = enumerate_feasible(inst, DEFAULT_BUDGET).unwrap();
    all.truncate(24);
    all
}

fn parallel() -> SolveOptions {
    SolveOptions { parallel: true, ..SolveOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_text_roundtrip(seed in any::<u64>(), ties in prop_oneof![Just(0.0), Just(0.4)]) {
        let inst = instance(seed, ties, 1);
        prop_assert!(validate_instance(&inst).is_empty());
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        prop_assert_eq!(serialize_instance(&back), serialize_instance(&inst));
        prop_assert_eq!(back.n(), inst.n());
    }

    #[test]
    fn matching_text_roundtrip(seed in any::<u64>()) {
        let inst = instance(seed, 0.3, 1);
        for m in feasible_matchings(&inst) {
            let back = parse_matching(&serialize_matching(&m), &inst).unwrap();
            prop_assert_eq!(back, m);
        }
    }

    #[test]
    fn type_vector_indices_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..12)) {
        let v = TypeVector::from_bits(bits.clone());
        prop_assert_eq!(TypeVector::from_indices(bits.len(), &v.indices()), Some(v.clone()));
        prop_assert_eq!(v.to_bitstring().len(), bits.len());
    }

    #[test]
    fn type_groups_partition_students(seed in any::<u64>()) {
        let inst = instance(seed, 0.0, 1);
        let groups = compute_type_groups(&inst);
        let mut ids: Vec<&String> = groups.iter().flat_map(|g| g.members.iter()).collect();
        ids.sort();
        let mut all: Vec<&String> = inst.students.iter().map(|s| &s.id).collect();
        all.sort();
        prop_assert_eq!(ids, all);
    }

    #[test]
    fn certificates_carry_valid_witnesses(seed in any::<u64>(), ties in prop_oneof![Just(0.0), Just(0.3)]) {
        let inst = instance(seed, ties, 1);
        for m in feasible_matchings(&inst) {
            for mode in [StabilityMode::Strict, StabilityMode::DBlocking] {
                if let Some(c) = find_blocking_pair(&inst, &m, mode, Strategy::Exhaustive).unwrap() {
                    let w: Vec<&str> = c.witness.iter().map(String::as_str).collect();
                    let student = c.student.as_deref().unwrap();
                    prop_assert!(witness_valid(&inst, &m, student, &c.college, &w).unwrap());
                    prop_assert!(w.iter().all(|s| m.contains(s, &c.college)));
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree(seed in any::<u64>(), ties in prop_oneof![Just(0.0), Just(0.3)]) {
        let inst = instance(seed, ties, 1);
        let seq = SolveOptions::sequential();
        let canon = SolveOptions { canonical: true, ..parallel() };
        for mode in [SolveMode::Feasible, SolveMode::Stable, SolveMode::DStable] {
            let a = solve_bruteforce(&inst, mode, &seq).unwrap();
            let b = solve_bruteforce(&inst, mode, &parallel()).unwrap();
            let c = solve_bruteforce(&inst, mode, &canon).unwrap();
            prop_assert_eq!(a.status, b.status);
            // canonical mode is the sequential answer
            prop_assert_eq!(&a.matching, &c.matching);
        }
        let few = (solve_few_students(&inst, &seq).unwrap(), solve_few_students(&inst, &parallel()).unwrap());
        prop_assert_eq!(few.0.status, few.1.status);
        let xp = (
            solve_xp_small_capacity(&inst, SolveMode::Stable, &seq).unwrap(),
            solve_xp_small_capacity(&inst, SolveMode::Stable, &parallel()).unwrap(),
        );
        prop_assert_eq!(xp.0.status, xp.1.status);
        let dp = (solve_dp_few_colleges_types(&inst, &seq).unwrap(), solve_dp_few_colleges_types(&inst, &parallel()).unwrap());
        prop_assert_eq!(dp.0.status, dp.1.status);
    }

    #[test]
    fn auto_answers_verify(seed in any::<u64>(), lower in 0u32..2) {
        let inst = instance(seed, 0.0, lower);
        let res = solve_auto(&inst, SolveMode::Stable, &SolveOptions::sequential()).unwrap();
        let oracle = solve_bruteforce(&inst, SolveMode::Stable, &SolveOptions::sequential()).unwrap();
        prop_assert_eq!(res.status, oracle.status);
        if let Some(m) = &res.matching {
            prop_assert!(check_feasible(&inst, m).unwrap().feasible);
            prop_assert!(find_blocking_pair(&inst, m, StabilityMode::Strict, Strategy::Exhaustive).unwrap().is_none());
        }
    }

    #[test]
    fn graph_parse_and_indset_generator(n in 1usize..6, mask in any::<u16>(), k in 0usize..6) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e).collect();
        let text = format!("{n} {}\n{}", edges.len(), edges.iter().map(|(a, b)| format!("{} {}\n", a + 1, b + 1)).collect::<String>());
        let g = parse_graph(&text).unwrap();
        prop_assert_eq!(&g, &Graph::new(n, edges).unwrap());
        prop_assert!(max_independent_set(&g) >= 1);
        match gen_from_independent_set(&g, k) {
            Ok(inst) => {
                prop_assert!(k <= n);
                prop_assert!(validate_instance(&inst).is_empty());
                prop_assert_eq!(inst.m(), 4);
                prop_assert_eq!(inst.lower_max(), 0);
                prop_assert!(inst.upper_max() <= 2);
            }
            Err(_) => prop_assert!(k > n),
        }
    }

    #[test]
    fn sat22_generator_shapes(seed in any::<u64>()) {
        let mut perm: Vec<i32> = (1..=3).flat_map(|v| [v, v, -v, -v]).collect();
        perm.shuffle(&mut rng(seed));
        let f = CnfFormula { num_vars: 3, clauses: perm.chunks(3).map(<[i32]>::to_vec).collect() };
        prop_assert!(sat22_occurrences_ok(&f));
        let text = format!("p cnf 3 4\n{}", f.clauses.iter().map(|c| format!("{} {} {} 0\n", c[0], c[1], c[2])).collect::<String>());
        prop_assert_eq!(&parse_dimacs(&text).unwrap(), &f);
        for v in [Sat22Variant::Stable, Sat22Variant::Feasible] {
            let inst = gen_from_sat22(&f, v).unwrap();
            prop_assert!(validate_instance(&inst).is_empty());
            prop_assert_eq!(inst.capacity_max(), 2);
            prop_assert!(!inst.has_ties());
        }
    }

    #[test]
    fn set_generators_validate(sets in proptest::collection::vec(proptest::collection::btree_set(1usize..5, 1..4), 1..5), k in 1usize..5) {
        let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let universe = sets.iter().flatten().copied().max().unwrap();
        let s = SetSystem::new(universe, sets.clone(), k).unwrap();
        if k <= sets.len() {
            let p = gen_from_set_packing(&s).unwrap();
            prop_assert!(validate_instance(&p).is_empty());
            prop_assert_eq!(p.lower_max(), 0);
            let covers = (1..=universe).all(|e| sets.iter().any(|x| x.contains(&e)));
            match gen_from_set_cover(&s) {
                Ok(c) => {
                    prop_assert!(covers);
                    prop_assert!(validate_instance(&c).is_empty());
                    prop_assert_eq!(c.m(), 1);
                }
                Err(_) => prop_assert!(!covers),
            }
        } else {
            prop_assert!(gen_from_set_packing(&s).is_err());
        }
    }
}
