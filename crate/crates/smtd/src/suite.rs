//! Seeded property suites: the fast solvers against exhaustive search on
//! random instances, and the hardness constructions against their source
//! problems. Reports are deterministic for a fixed configuration.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::model::{Dense, Instance, Matching, TypeVector};
use crate::par;
use crate::random::{random_instance, rng, RandomParams, Rng64};
use crate::reductions::{
    eval_exists_forall_not1in3, exact_cover_exists, gen_from_independent_set, gen_from_not1in3, gen_from_sat22,
    gen_from_set_cover, gen_from_set_packing, gen_lemma2_gadget, gen_x3c_blocking_instance, max_independent_set,
    min_set_cover, sat_bruteforce, set_packing_exists, CnfFormula, Graph, QFormula, Sat22Variant, SetSystem,
};
use crate::solvers::{
    build_ilp, enumerate_feasible, kernelize_few_students, solve_bruteforce, solve_dp_detailed, solve_few_students,
    solve_gs_branching, solve_ilp_feasible, solve_xp_small_capacity, DpBranch, Kernel, SolveMode, SolveOptions,
    SolveResult, DEFAULT_BUDGET,
};
use crate::solvers::dense_enumerate_feasible;
use crate::verify::{
    check_feasible, dense_find_blocking, dense_pair_witness, find_blocking_pair, is_stable_zero_lower, pair_witness,
    witness_valid, worst_sets, Profile, StabilityMode, Strategy,
};

/// Feasible matchings examined per random instance.
const MATCHINGS_PER_INSTANCE: usize = 48;
/// Examples of failures kept per check.
const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances for the oracle suite; samples for randomized parts of
    /// the reductions suite.
    pub count: usize,
    pub max_n: usize,
    pub max_m: usize,
    pub max_t: usize,
    /// Tie probability used on every other instance (the rest are tie-free).
    pub ties: f64,
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, count: 1000, max_n: 6, max_m: 3, max_t: 3, ties: 0.3, parallel: par::ENABLED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One case outcome: check name and an error description on failure.
type Outcome = (&'static str, std::result::Result<(), String>);

#[derive(Default)]
struct Tally {
    checks: Vec<CheckSummary>,
}

impl Tally {
    fn declare(names: &[&str]) -> Self {
        let checks =
            names.iter().map(|n| CheckSummary { name: n.to_string(), cases: 0, failures: 0, examples: Vec::new() }).collect();
        Tally { checks }
    }

    fn add(&mut self, (name, res): Outcome) {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(CheckSummary { name: name.into(), cases: 0, failures: 0, examples: Vec::new() });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[pos];
        c.cases += 1;
        if let Err(e) = res {
            c.failures += 1;
            if c.examples.len() < MAX_EXAMPLES {
                c.examples.push(e);
            }
        }
    }

    fn report(self, suite: &str, seed: u64) -> SuiteReport {
        let passed = self.checks.iter().all(CheckSummary::passed);
        SuiteReport { suite: suite.into(), seed, passed, checks: self.checks }
    }
}

fn case_rng(seed: u64, salt: u64, i: u64) -> Rng64 {
    rng(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: crate::Error) -> String {
    format!("error: {e}")
}

fn opts() -> SolveOptions {
    SolveOptions::sequential()
}

fn is_stable(inst: &Instance, m: &Matching) -> Result<bool> {
    Ok(check_feasible(inst, m)?.feasible && find_blocking_pair(inst, m, StabilityMode::Strict, Strategy::Exhaustive)?.is_none())
}

fn label(i: u64) -> String {
    format!("instance #{i}")
}

// ---------------------------------------------------------------- oracle suite

pub const ORACLE_CHECKS: &[&str] = &[
    "agreement.few_students",
    "agreement.xp_mq",
    "agreement.dp_mt",
    "agreement.gs_branch",
    "answers_verified",
    "matching_size_bound",
    "dp_branch_sound",
    "zero_lower_fast_path",
    "strategy_equivalence",
    "witness_size_bound",
    "d_blocking_implies_strict",
    "d_equals_strict_without_lower",
    "ilp_equivalence",
    "ilp_materialize",
    "ilp_induced",
    "kernel_decision",
    "kernel_bounds",
];

/// Cross-checks the specialized solvers and verification shortcuts against
/// exhaustive search.
pub fn oracle_suite(cfg: &SuiteConfig) -> SuiteReport {
    let cases: Vec<u64> = (0..cfg.count as u64).collect();
    let per_case = par::map(cases, cfg.parallel, |i| oracle_case(cfg, i));
    let mut tally = Tally::declare(ORACLE_CHECKS);
    per_case.into_iter().flatten().for_each(|o| tally.add(o));
    tally.report("oracle", cfg.seed)
}

fn oracle_case(cfg: &SuiteConfig, i: u64) -> Vec<Outcome> {
    let mut out = Vec::new();
    let ties = if i.is_multiple_of(2) { 0.0 } else { cfg.ties };
    let base = RandomParams { max_n: cfg.max_n, max_m: cfg.max_m, max_t: cfg.max_t, ties, ..Default::default() };

    let inst = random_instance(&mut case_rng(cfg.seed, 1, i), &base);
    solver_agreement(&inst, i, &mut out);
    strategies(&inst, i, &mut out);
    ilp(&inst, i, &mut out);

    let zl = random_instance(&mut case_rng(cfg.seed, 2, i), &RandomParams { lower_max: 0, ..base.clone() });
    zero_lower(&zl, i, &mut out);

    let small = random_instance(
        &mut case_rng(cfg.seed, 3, i),
        &RandomParams { max_n: cfg.max_n.min(5), max_m: cfg.max_m.max(5), ..base },
    );
    kernel(&small, i, &mut out);
    out
}

fn check_answer(inst: &Instance, res: &SolveResult) -> std::result::Result<(), String> {
    match &res.matching {
        Some(m) if res.is_yes() => match is_stable(inst, m) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{} returned an unstable matching", res.algorithm)),
            Err(e) => Err(err_str(e)),
        },
        None if !res.is_yes() => Ok(()),
        _ => Err(format!("{}: status and matching disagree", res.algorithm)),
    }
}

fn solver_agreement(inst: &Instance, i: u64, out: &mut Vec<Outcome>) {
    let oracle = match solve_bruteforce(inst, SolveMode::Stable, &opts()) {
        Ok(r) => r,
        Err(e) => {
            out.push(("agreement.few_students", Err(format!("{}: oracle {}", label(i), err_str(e)))));
            return;
        }
    };
    out.push(("answers_verified", check_answer(inst, &oracle).map_err(|e| format!("{}: {e}", label(i)))));
    if let Some(m) = &oracle.matching {
        let bound = inst.m() * inst.capacity_max() as usize;
        out.push(("matching_size_bound", expect(m.len() <= bound, || format!("{}: |M| = {} > {bound}", label(i), m.len()))));
    }
    let mut compare = |name: &'static str, res: Result<SolveResult>| {
        let r = res.map_err(err_str).and_then(|r| {
            check_answer(inst, &r)?;
            expect(r.status == oracle.status, || format!("{:?} vs oracle {:?}", r.status, oracle.status))
        });
        out.push((name, r.map_err(|e| format!("{}: {e}", label(i)))));
    };
    compare("agreement.few_students", solve_few_students(inst, &opts()));
    compare("agreement.xp_mq", solve_xp_small_capacity(inst, SolveMode::Stable, &opts()));
    if inst.lower_max() == 0 && !inst.has_ties() {
        compare("agreement.gs_branch", solve_gs_branching(inst, &opts()));
    }
    match solve_dp_detailed(inst, &opts()) {
        Ok((res, branch)) => {
            compare("agreement.dp_mt", Ok(res.clone()));
            if let (Some(m), Some(b)) = (&res.matching, &branch) {
                out.push(("dp_branch_sound", dp_branch_sound(inst, m, b).map_err(|e| format!("{}: {e}", label(i)))));
            }
        }
        Err(e) => compare("agreement.dp_mt", Err(e)),
    }
}

/// The accepted branch's guessed worst students are worst in the returned
/// matching, and its guessed counts are the matching's counts.
pub fn dp_branch_sound(inst: &Instance, m: &Matching, b: &DpBranch) -> std::result::Result<(), String> {
    let worst = worst_sets(inst, m).map_err(err_str)?;
    for (c, bits, s) in &b.wst {
        let set = worst.iter().find(|w| &w.college == c && &w.types.to_bitstring() == bits);
        match (s, set) {
            (None, None) => {}
            (Some(s), Some(set)) if set.members.contains(s) => {}
            _ => return Err(format!("guessed worst {s:?} for ({c}, {bits}) does not match the matching")),
        }
    }
    for (c, z, x) in &b.counts {
        let members = m.students_of(c);
        let actual = if *z == inst.num_types {
            members.len()
        } else {
            members.iter().filter(|s| inst.student(s).is_some_and(|st| st.types.get(*z))).count()
        };
        if actual as u32 != *x {
            return Err(format!("guessed count {x} for ({c}, type {z}) but the matching has {actual}"));
        }
    }
    Ok(())
}

fn sample_matchings(inst: &Instance) -> Result<Vec<Matching>> {
    let mut all = enumerate_feasible(inst, DEFAULT_BUDGET)?;
    all.truncate(MATCHINGS_PER_INSTANCE);
    Ok(all)
}

fn strategies(inst: &Instance, i: u64, out: &mut Vec<Outcome>) {
    let ms = match sample_matchings(inst) {
        Ok(ms) => ms,
        Err(e) => return out.push(("strategy_equivalence", Err(format!("{}: {}", label(i), err_str(e))))),
    };
    let t = inst.num_types;
    for (k, m) in ms.iter().enumerate() {
        let tag = || format!("{} matching #{k}", label(i));
        let run = |mode, strat| find_blocking_pair(inst, m, mode, strat);
        let (ex, re, dex, dre) = match (
            run(StabilityMode::Strict, Strategy::Exhaustive),
            run(StabilityMode::Strict, Strategy::Restricted),
            run(StabilityMode::DBlocking, Strategy::Exhaustive),
            run(StabilityMode::DBlocking, Strategy::Restricted),
        ) {
            (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
            _ => return out.push(("strategy_equivalence", Err(format!("{}: verification error", tag())))),
        };
        out.push((
            "strategy_equivalence",
            expect(ex.is_some() == re.is_some() && dex.is_some() == dre.is_some(), || {
                format!("{}: exhaustive {ex:?} / restricted {re:?}; d: {dex:?} / {dre:?}", tag())
            }),
        ));
        if let Some(c) = &ex {
            let size = m.students_of(&c.college).len();
            let bound = t.min(size);
            out.push((
                "witness_size_bound",
                expect(c.witness.len() <= bound, || format!("{}: witness of size {} > {bound}", tag(), c.witness.len())),
            ));
        }
        if let Some(c) = &dex {
            let student = c.student.as_deref().unwrap_or_default();
            let w: Vec<&str> = c.witness.iter().map(String::as_str).collect();
            let strict_ok = witness_valid(inst, m, student, &c.college, &w).unwrap_or(false)
                && pair_witness(inst, m, student, &c.college, StabilityMode::Strict, Strategy::Exhaustive)
                    .is_ok_and(|x| x.is_some());
            out.push(("d_blocking_implies_strict", expect(strict_ok, || format!("{}: {c:?} is not a blocking pair", tag()))));
        }
        if inst.lower_max() == 0 {
            out.push((
                "d_equals_strict_without_lower",
                expect(ex.is_some() == dex.is_some(), || format!("{}: strict {ex:?} vs d {dex:?}", tag())),
            ));
        }
    }
}

fn zero_lower(inst: &Instance, i: u64, out: &mut Vec<Outcome>) {
    let ms = match sample_matchings(inst) {
        Ok(ms) => ms,
        Err(e) => return out.push(("zero_lower_fast_path", Err(format!("{}: {}", label(i), err_str(e))))),
    };
    for (k, m) in ms.iter().enumerate() {
        let r = match (is_stable_zero_lower(inst, m), find_blocking_pair(inst, m, StabilityMode::Strict, Strategy::Exhaustive)) {
            (Ok(fast), Ok(slow)) => expect(fast.is_some() == slow.is_some(), || {
                format!("{} matching #{k}: fast {fast:?} vs exhaustive {slow:?}", label(i))
            }),
            (Err(e), _) | (_, Err(e)) => Err(format!("{} matching #{k}: {}", label(i), err_str(e))),
        };
        out.push(("zero_lower_fast_path", r));
    }
}

fn ilp(inst: &Instance, i: u64, out: &mut Vec<Outcome>) {
    let tag = label(i);
    let (model, res, oracle) = match (
        build_ilp(inst),
        solve_ilp_feasible(inst, &opts()),
        solve_bruteforce(inst, SolveMode::Feasible, &opts()),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return out.push(("ilp_equivalence", Err(format!("{tag}: solver error")))),
    };
    out.push(("ilp_equivalence", expect(res.status == oracle.status, || format!("{tag}: ilp {:?} vs brute {:?}", res.status, oracle.status))));
    if let Some(m) = &res.matching {
        let x = model.induced_assignment(m);
        let back = model.materialize(&x);
        let ok = check_feasible(inst, m).is_ok_and(|r| r.feasible)
            && model.is_satisfied(&x)
            && check_feasible(inst, &back).is_ok_and(|r| r.feasible);
        out.push(("ilp_materialize", expect(ok, || format!("{tag}: ILP answer does not materialize to a feasible matching"))));
    }
    if let Ok(ms) = sample_matchings(inst) {
        for (k, m) in ms.iter().enumerate() {
            out.push((
                "ilp_induced",
                expect(model.is_satisfied(&model.induced_assignment(m)), || {
                    format!("{tag} matching #{k}: induced assignment violates the model")
                }),
            ));
        }
    }
}

fn kernel(inst: &Instance, i: u64, out: &mut Vec<Outcome>) {
    let tag = label(i);
    let oracle = match solve_bruteforce(inst, SolveMode::Stable, &opts()) {
        Ok(r) => r.is_yes(),
        Err(e) => return out.push(("kernel_decision", Err(format!("{tag}: {}", err_str(e))))),
    };
    let r = match kernelize_few_students(inst) {
        Ok(Kernel::No(_)) => expect(!oracle, || format!("{tag}: kernel says no, oracle yes")),
        Ok(Kernel::Reduced(k)) => {
            let n = inst.n();
            let bounds = k.num_types <= 1usize << n.min(20) && k.m() <= n * n + n && k.n() <= n;
            out.push((
                "kernel_bounds",
                expect(bounds, || format!("{tag}: kernel has t={}, m={}, n={} from n={n}", k.num_types, k.m(), k.n())),
            ));
            match solve_bruteforce(&k, SolveMode::Stable, &opts()) {
                Ok(r) => expect(r.is_yes() == oracle, || format!("{tag}: kernel {} vs oracle {oracle}", r.is_yes())),
                Err(e) => Err(format!("{tag}: {}", err_str(e))),
            }
        }
        Err(e) => Err(format!("{tag}: {}", err_str(e))),
    };
    out.push(("kernel_decision", r));
}

// ------------------------------------------------------------ reductions suite

pub const REDUCTION_CHECKS: &[&str] = &[
    "not1in3",
    "sat22.stable",
    "sat22.feasible",
    "indset",
    "indset.brute",
    "x3c.pair",
    "x3c.any",
    "set_cover",
    "set_packing",
    "gadget.part1",
    "gadget.part2",
];

/// Runs every construction on small source instances and compares the
/// decision with direct evaluation of the source problem.
pub fn reductions_suite(cfg: &SuiteConfig) -> SuiteReport {
    let jobs: Vec<Job> = reduction_jobs(cfg);
    let per_job = par::map(jobs, cfg.parallel, run_job);
    let mut tally = Tally::declare(REDUCTION_CHECKS);
    per_job.into_iter().flatten().for_each(|o| tally.add(o));
    tally.report("reductions", cfg.seed)
}

/// Only the gadget checks: full core colleges make the special pairs
/// harmless, and an unfilled core college always leaves a blocking pair.
pub fn gadget_suite(parallel: bool) -> SuiteReport {
    let jobs: Vec<Job> = gadget_configs().into_iter().map(|(u, w)| Job::Gadget(u, w)).collect();
    let mut tally = Tally::declare(&["gadget.part1", "gadget.part2"]);
    par::map(jobs, parallel, run_job).into_iter().flatten().for_each(|o| tally.add(o));
    tally.report("gadget", 0)
}

enum Job {
    Not1in3(QFormula),
    Sat22(CnfFormula),
    IndSet(Graph, usize),
    X3c(SetSystem),
    SetCover(SetSystem),
    SetPacking(SetSystem),
    Gadget(Vec<(String, TypeVector)>, Vec<(String, u32, Vec<u32>)>),
}

/// Sat22 samples regardless of `count`.
const SAT22_SAMPLES: usize = 60;
/// Unsatisfiable formulas added to the samples, found within the first
/// `SAT22_SCAN` draws of a separate stream.
const SAT22_UNSAT: usize = 3;
const SAT22_SCAN: usize = 20_000;
/// Two-clause formulas over two X and two Y variables.
const NOT1IN3_PAIRS: usize = 40;
/// Random regular 3-set systems on six elements.
const X3C_SAMPLES: usize = 20;

fn reduction_jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    // r = 1: (x1, y1, ¬y1) and (¬x1, y1, ¬y1) are the only clauses over one X and one
    // Y variable with three distinct literals and two Y-literals
    let patterns = [vec![1, 2, -2], vec![-1, 2, -2]];
    for s in 0..=2u32 {
        for code in 0..(1usize << s) {
            let clauses = (0..s as usize).map(|j| patterns[code >> j & 1].clone()).collect();
            jobs.push(Job::Not1in3(QFormula { r: 1, clauses }));
        }
    }
    // r = 2, one clause: every clause shape; two clauses: a seeded sample
    let lits: Vec<i32> = vec![1, -1, 2, -2, 3, -3, 4, -4];
    let mut shapes = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let cl = vec![lits[a], lits[b], lits[c]];
                if cl.iter().filter(|l| l.abs() > 2).count() >= 2 {
                    shapes.push(cl);
                }
            }
        }
    }
    let mut rng = case_rng(cfg.seed, 12, 0);
    for cl in &shapes {
        jobs.push(Job::Not1in3(QFormula { r: 2, clauses: vec![cl.clone()] }));
    }
    for _ in 0..NOT1IN3_PAIRS {
        let pick = |rng: &mut Rng64| shapes[rng.gen_range(0..shapes.len())].clone();
        let clauses = vec![pick(&mut rng), pick(&mut rng)];
        jobs.push(Job::Not1in3(QFormula { r: 2, clauses }));
    }
    let mut rng = case_rng(cfg.seed, 10, 0);
    for _ in 0..SAT22_SAMPLES {
        jobs.push(Job::Sat22(random_sat22(&mut rng)));
    }
    // unsatisfiable arrangements are rare (well under 1%); scan for a few
    let mut rng = case_rng(cfg.seed, 13, 0);
    let unsat = (0..SAT22_SCAN).map(|_| random_sat22(&mut rng)).filter(|f| sat_bruteforce(f).is_none());
    jobs.extend(unsat.take(SAT22_UNSAT).map(Job::Sat22));
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(n, edges).expect("enumerated graphs are simple");
            for k in 0..=n {
                jobs.push(Job::IndSet(g.clone(), k));
            }
        }
    }
    jobs.push(Job::X3c(SetSystem::new(3, vec![vec![1, 2, 3]; 3], 0).expect("valid system")));
    let mut rng = case_rng(cfg.seed, 11, 0);
    for _ in 0..X3C_SAMPLES {
        jobs.push(Job::X3c(random_rx3c(&mut rng)));
    }
    let nonempty: Vec<Vec<usize>> = vec![vec![1], vec![2], vec![1, 2]];
    for mask in 1u32..8 {
        let sets: Vec<Vec<usize>> = (0..3).filter(|j| mask >> j & 1 == 1).map(|j| nonempty[j].clone()).collect();
        for k in 1..=sets.len() {
            let s = SetSystem::new(2, sets.clone(), k).expect("valid system");
            if min_set_cover(&s).is_some() {
                jobs.push(Job::SetCover(s));
            }
        }
    }
    for len in 1..=3u32 {
        for code in 0..3usize.pow(len) {
            let sets: Vec<Vec<usize>> = (0..len).map(|j| nonempty[code / 3usize.pow(j) % 3].clone()).collect();
            for k in 1..=sets.len() {
                jobs.push(Job::SetPacking(SetSystem::new(2, sets.clone(), k).expect("valid system")));
            }
        }
    }
    jobs.extend(gadget_configs().into_iter().map(|(u, w)| Job::Gadget(u, w)));
    jobs
}

/// Random arrangement of the twelve literal occurrences of a formula over
/// three variables where each literal occurs twice, cut into four clauses.
fn random_sat22(rng: &mut Rng64) -> CnfFormula {
    let mut occ: Vec<i32> = (1..=3).flat_map(|v| [v, v, -v, -v]).collect();
    occ.shuffle(rng);
    CnfFormula { num_vars: 3, clauses: occ.chunks(3).map(<[i32]>::to_vec).collect() }
}

/// Six 3-subsets of {1..6} with every element in exactly three of them.
fn random_rx3c(rng: &mut Rng64) -> SetSystem {
    loop {
        let mut occ: Vec<usize> = (1..=6).flat_map(|e| [e, e, e]).collect();
        occ.shuffle(rng);
        let sets: Vec<Vec<usize>> = occ.chunks(3).map(<[usize]>::to_vec).collect();
        if sets.iter().all(|s| s[0] != s[1] && s[0] != s[2] && s[1] != s[2]) {
            return SetSystem::new(6, sets, 0).expect("valid system");
        }
    }
}

type GadgetConfig = (Vec<(String, TypeVector)>, Vec<(String, u32, Vec<u32>)>);

/// Up to two core students (one core type, on or off) and up to two core
/// colleges (capacity 1–2, core upper quota 0–1).
fn gadget_configs() -> Vec<GadgetConfig> {
    let mut out = Vec::new();
    for ns in 0..=2u32 {
        for sbits in 0..1u32 << ns {
            let students: Vec<(String, TypeVector)> = (0..ns)
                .map(|j| (format!("x{}", j + 1), TypeVector::from_bits(vec![sbits >> j & 1 == 1])))
                .collect();
            // core students need a core college to apply to
            for nc in u32::from(ns > 0)..=2 {
                for code in 0..4u32.pow(nc) {
                    let colleges = (0..nc)
                        .map(|j| {
                            let c = code / 4u32.pow(j) % 4;
                            (format!("w{}", j + 1), 1 + c % 2, vec![c / 2])
                        })
                        .collect();
                    out.push((students.clone(), colleges));
                }
            }
        }
    }
    out
}

fn run_job(job: Job) -> Vec<Outcome> {
    match job {
        Job::Not1in3(q) => vec![("not1in3", not1in3_case(&q))],
        Job::Sat22(f) => sat22_case(&f),
        Job::IndSet(g, k) => indset_case(&g, k),
        Job::X3c(s) => x3c_case(&s),
        Job::SetCover(s) => vec![("set_cover", set_cover_case(&s))],
        Job::SetPacking(s) => vec![("set_packing", set_packing_case(&s))],
        Job::Gadget(u, w) => gadget_case(&u, &w),
    }
}

fn decide(inst: &Instance, mode: SolveMode, solver: fn(&Instance, &SolveOptions) -> Result<SolveResult>) -> std::result::Result<bool, String> {
    let r = solver(inst, &opts()).map_err(err_str)?;
    if let Some(m) = &r.matching {
        let ok = match mode {
            SolveMode::Feasible => check_feasible(inst, m).is_ok_and(|x| x.feasible),
            _ => is_stable(inst, m).unwrap_or(false),
        };
        if !ok {
            return Err(format!("{} answer fails verification", r.algorithm));
        }
    }
    Ok(r.is_yes())
}

fn brute_stable(inst: &Instance, o: &SolveOptions) -> Result<SolveResult> {
    solve_bruteforce(inst, SolveMode::Stable, o)
}

fn brute_feasible(inst: &Instance, o: &SolveOptions) -> Result<SolveResult> {
    solve_bruteforce(inst, SolveMode::Feasible, o)
}

fn not1in3_case(q: &QFormula) -> std::result::Result<(), String> {
    let truth = eval_exists_forall_not1in3(q).map_err(err_str)?;
    let inst = gen_from_not1in3(q).map_err(err_str)?;
    let yes = decide(&inst, SolveMode::Stable, brute_stable)?;
    expect(truth == yes, || format!("{:?}: formula {truth}, stable matching {yes}", q.clauses))
}

fn sat22_case(f: &CnfFormula) -> Vec<Outcome> {
    let sat = sat_bruteforce(f).is_some();
    let run = |variant, mode, solver| -> std::result::Result<(), String> {
        let inst = gen_from_sat22(f, variant).map_err(err_str)?;
        let yes = decide(&inst, mode, solver)?;
        expect(yes == sat, || format!("{:?}: satisfiable {sat}, solver {yes}", f.clauses))
    };
    vec![
        ("sat22.stable", run(Sat22Variant::Stable, SolveMode::Stable, solve_gs_branching)),
        ("sat22.feasible", run(Sat22Variant::Feasible, SolveMode::Feasible, solve_ilp_feasible)),
    ]
}

fn indset_case(g: &Graph, k: usize) -> Vec<Outcome> {
    let truth = max_independent_set(g) >= k;
    let run = |solver| -> std::result::Result<(), String> {
        let inst = gen_from_independent_set(g, k).map_err(err_str)?;
        let yes = decide(&inst, SolveMode::Stable, solver)?;
        expect(yes == truth, || format!("n={} edges={:?} k={k}: independent set {truth}, solver {yes}", g.n, g.edges))
    };
    let mut out = vec![("indset", run(solve_gs_branching))];
    if g.n <= 2 {
        out.push(("indset.brute", run(brute_stable)));
    }
    out
}

fn x3c_case(s: &SetSystem) -> Vec<Outcome> {
    let cover = exact_cover_exists(s);
    let (inst, m) = match gen_x3c_blocking_instance(s) {
        Ok(x) => x,
        Err(e) => return vec![("x3c.pair", Err(err_str(e)))],
    };
    let pair = pair_witness(&inst, &m, "d", "w", StabilityMode::Strict, Strategy::Exhaustive).map(|w| w.is_some());
    let any = find_blocking_pair(&inst, &m, StabilityMode::Strict, Strategy::Exhaustive).map(|c| c.is_some());
    let cmp = |r: Result<bool>| match r {
        Ok(b) => expect(b == cover, || format!("{:?}: exact cover {cover}, blocked {b}", s.sets)),
        Err(e) => Err(err_str(e)),
    };
    vec![("x3c.pair", cmp(pair)), ("x3c.any", cmp(any))]
}

fn set_cover_case(s: &SetSystem) -> std::result::Result<(), String> {
    let truth = min_set_cover(s).is_some_and(|c| c <= s.k);
    let inst = gen_from_set_cover(s).map_err(err_str)?;
    let brute = decide(&inst, SolveMode::Feasible, brute_feasible)?;
    let ilp = decide(&inst, SolveMode::Feasible, solve_ilp_feasible)?;
    expect(brute == truth && ilp == truth, || format!("{:?} k={}: cover {truth}, brute {brute}, ilp {ilp}", s.sets, s.k))
}

fn set_packing_case(s: &SetSystem) -> std::result::Result<(), String> {
    let truth = set_packing_exists(s);
    let inst = gen_from_set_packing(s).map_err(err_str)?;
    let yes = decide(&inst, SolveMode::Stable, brute_stable)?;
    expect(yes == truth, || format!("{:?} k={}: packing {truth}, stable {yes}", s.sets, s.k))
}

fn gadget_case(core_s: &[(String, TypeVector)], core_c: &[(String, u32, Vec<u32>)]) -> Vec<Outcome> {
    let tag = || {
        let s: Vec<String> = core_s.iter().map(|(id, t)| format!("{id}:{}", t.to_bitstring())).collect();
        let c: Vec<String> = core_c.iter().map(|(id, q, u)| format!("{id}:q{q}u{u:?}")).collect();
        format!("U={s:?} W={c:?}")
    };
    let built = gen_lemma2_gadget(core_s, core_c).and_then(|inst| {
        let d = Dense::new(&inst)?;
        let all = dense_enumerate_feasible(&d, DEFAULT_BUDGET)?;
        Ok((d, all))
    });
    let (d, all) = match built {
        Ok(x) => x,
        Err(e) => return vec![("gadget.part1", Err(format!("{}: {}", tag(), err_str(e))))],
    };
    let idx = |id: &str| d.student_index(id).or_else(|| d.college_index(id)).expect("gadget id");
    let core: Vec<usize> = core_s.iter().map(|(id, _)| idx(id)).collect();
    let wc: Vec<(usize, usize)> = core_c.iter().map(|(id, q, _)| (idx(id), *q as usize)).collect();
    let [r1, r2, r3, a, b] = ["r1", "r2", "r3", "a", "b"].map(idx);
    let mut families: Vec<(usize, usize)> = [r1, r2, r3].iter().flat_map(|&u| [(u, a), (u, b)]).collect();
    families.extend(wc.iter().map(|&(w, _)| (r2, w)));

    let mut out = Vec::new();
    for m in &all {
        let core_count = |w: usize| core.iter().filter(|&&u| m[u] == Some(w)).count();
        let show = || format!("{} {:?}", tag(), d.matching_of(m).pairs());
        let full = wc.iter().all(|&(w, q)| core_count(w) == q);
        let configured = m[r2] == Some(a) && m[r1] == Some(b) && m[r3] == Some(b);
        if full && configured {
            let p = Profile::new(&d, m);
            let blocked: Vec<String> = families
                .iter()
                .filter(|&&(u, w)| dense_pair_witness(&d, m, &p, u, w, StabilityMode::Strict, Strategy::Exhaustive).is_some())
                .map(|&(u, w)| format!("{{{}, {}}}", d.sid[u], d.cid[w]))
                .collect();
            out.push(("gadget.part1", expect(blocked.is_empty(), || format!("{}: blocked by {blocked:?}", show()))));
        }
        if wc.iter().any(|&(w, q)| core_count(w) < q) {
            let blocked = dense_find_blocking(&d, m, StabilityMode::Strict, Strategy::Exhaustive).is_some();
            out.push(("gadget.part2", expect(blocked, || format!("{}: not blocked", show()))));
        }
    }
    out
}
