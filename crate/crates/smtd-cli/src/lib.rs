//! Command-line front end for `smtd`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with everything destined for stdout and stderr, so the
//! binary is a thin wrapper and tests can drive the CLI in-process.
//!
//! Exit codes: 0 ran to completion (the decision is inside the output
//! document), 2 usage or syntax error, 3 instance or matching validation
//! failure, 4 budget exceeded or failed self-verification.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use smtd::model::{parse_instance, parse_matching, serialize_instance, serialize_matching, validate_instance, Instance};
use smtd::reductions as red;
use smtd::solvers::{self, SolveMode, SolveOptions, SolveResult};
use smtd::suite::{self, SuiteConfig};
use smtd::verify::{check_feasible, find_blocking_coalition, find_blocking_pair, StabilityMode, Strategy};
use smtd::Error;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "smtd", version, about = "Stable matchings with diversity constraints")]
struct Cli {
    /// Pretty-print output documents and add human-readable summaries on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel search (1 disables parallelism).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check an instance file against the model invariants.
    Validate { instance: PathBuf },
    /// Check a matching for feasibility and stability.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Strict)]
        mode: VerifyMode,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
    },
    /// Decide whether a feasible (and stable) matching exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = ModeArg::Stable)]
        mode: ModeArg,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Decide whether a feasible matching exists.
    Feasible {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = FeasibleAlgo::Ilp)]
        algo: FeasibleAlgo,
        /// Write the integer program in LP format.
        #[arg(long, value_name = "FILE")]
        emit_lp: Option<PathBuf>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Build an instance from a source problem.
    Generate(GenerateArgs),
    /// Run a seeded property suite and report pass/fail counts.
    Bench {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_t: usize,
        #[arg(long, default_value_t = 0.3)]
        ties: f64,
        /// Run sequentially (the report is identical either way).
        #[arg(long)]
        canonical: bool,
    },
}

#[derive(Args, Debug)]
struct RunFlags {
    /// Single worker and canonical-order answers; omits timings.
    #[arg(long)]
    canonical: bool,
    /// Search budget (default: SMTD_BUDGET or 1e8).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    from: Source,
    /// Source file: QDIMACS (not1in3), DIMACS (sat22*), edge list (indset) or
    /// set system (x3c, setcover, setpacking); `-` reads stdin.
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Target size k (indset, setcover, setpacking).
    #[arg(long)]
    k: Option<usize>,
    /// Number of core students (gadget).
    #[arg(long, default_value_t = 0)]
    students: usize,
    /// Comma-separated core college capacities (gadget).
    #[arg(long, value_delimiter = ',')]
    capacities: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    max_m: usize,
    #[arg(long, default_value_t = 3)]
    max_t: usize,
    #[arg(long, default_value_t = 0.0)]
    ties: f64,
    #[arg(long, default_value_t = 1)]
    lower_max: u32,
    /// Write the instance here instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VerifyMode {
    Feasible,
    Strict,
    D,
    Coalition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum StrategyArg {
    Restricted,
    Exhaustive,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Algo {
    Auto,
    Brute,
    FewStudents,
    XpMq,
    DpMt,
    GsBranch,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Stable,
    Feasible,
    DStable,
    CStable,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FeasibleAlgo {
    Ilp,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Not1in3,
    Sat22,
    Sat22Feasible,
    Indset,
    X3c,
    Setcover,
    Setpacking,
    Gadget,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    Oracle,
    Reductions,
    Gadget,
}

/// A failed command: exit code and one-line diagnostic, plus an optional
/// document that still goes to stdout.
struct Fail {
    code: i32,
    msg: String,
    doc: Option<Value>,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into(), doc: None }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail { code: exit_code(&e), msg: e.to_string(), doc: None }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax(_) | Error::PreconditionViolated(_) | Error::TiesPresent | Error::NonZeroLowerQuota => 2,
        Error::InvalidInstance(_)
        | Error::UnacceptablePair { .. }
        | Error::DuplicateStudent(_)
        | Error::WitnessNotSubset(_)
        | Error::InfeasibleInput => 3,
        Error::BudgetExceeded { .. } | Error::VerificationFailed(_) => 4,
    }
}

/// What a successful command produced.
struct Done {
    doc: Option<Value>,
    notes: Vec<String>,
}

impl Done {
    fn doc(v: Value) -> Self {
        Done { doc: Some(v), notes: Vec::new() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(n) = cli.jobs {
        smtd::par::configure_threads(n);
    }
    let render = |v: &Value| {
        let mut s = if cli.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("json");
        s.push('\n');
        s
    };
    match dispatch(&cli) {
        Ok(done) => Outcome {
            code: 0,
            stdout: done.doc.as_ref().map(render).unwrap_or_default(),
            stderr: done.notes.iter().map(|n| format!("{n}\n")).collect(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: f.doc.as_ref().map(render).unwrap_or_default(),
            stderr: format!("error: {}\n", f.msg),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Done, Fail> {
    match &cli.cmd {
        Cmd::Validate { instance } => validate(instance),
        Cmd::Verify { instance, matching, mode, strategy } => verify(instance, matching, *mode, *strategy),
        Cmd::Solve { instance, algo, mode, run } => solve(cli, instance, *algo, *mode, run),
        Cmd::Feasible { instance, algo, emit_lp, run } => feasible(cli, instance, *algo, emit_lp.as_deref(), run),
        Cmd::Generate(g) => generate(g),
        Cmd::Bench { suite, seed, count, max_n, max_m, max_t, ties, canonical } => {
            if !(0.0..=1.0).contains(ties) {
                return Err(Fail::usage("--ties must be a probability"));
            }
            let cfg = SuiteConfig {
                seed: *seed,
                count: *count,
                max_n: *max_n,
                max_m: *max_m,
                max_t: *max_t,
                ties: *ties,
                parallel: !canonical && cli.jobs != Some(1) && smtd::par::ENABLED,
            };
            let report = match suite {
                SuiteArg::Oracle => suite::oracle_suite(&cfg),
                SuiteArg::Reductions => suite::reductions_suite(&cfg),
                SuiteArg::Gadget => suite::gadget_suite(cfg.parallel),
            };
            let mut done = Done::doc(json!(report));
            if cli.pretty {
                done.notes = report
                    .checks
                    .iter()
                    .map(|c| format!("{:<32} {:>7} cases {:>4} failures", c.name, c.cases, c.failures))
                    .collect();
            }
            Ok(done)
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Fail::usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("reading {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::usage(format!("writing {}: {e}", path.display())))
}

/// Parses and validates an instance file.
fn load(path: &Path) -> Result<Instance, Fail> {
    let inst = parse_instance(&read(path)?)?;
    let violations = validate_instance(&inst);
    if let Some(v) = violations.first() {
        return Err(Fail {
            code: 3,
            msg: format!("{} violation(s); first: {} ({})", violations.len(), v.detail, v.location),
            doc: None,
        });
    }
    Ok(inst)
}

fn validate(path: &Path) -> Result<Done, Fail> {
    let inst = parse_instance(&read(path)?)?;
    let violations = validate_instance(&inst);
    let doc = json!({ "valid": violations.is_empty(), "violations": violations });
    match violations.first() {
        None => Ok(Done::doc(doc)),
        Some(v) => Err(Fail {
            code: 3,
            msg: format!("{} violation(s); first: {} ({})", violations.len(), v.detail, v.location),
            doc: Some(doc),
        }),
    }
}

fn verify(inst_path: &Path, m_path: &Path, mode: VerifyMode, strategy: StrategyArg) -> Result<Done, Fail> {
    let inst = load(inst_path)?;
    let m = parse_matching(&read(m_path)?, &inst)?;
    let report = check_feasible(&inst, &m)?;
    if mode == VerifyMode::Feasible {
        return Ok(Done::doc(json!({ "feasibility": report })));
    }
    if !report.feasible {
        return Ok(Done::doc(json!({ "feasibility": report, "stable": false, "certificate": null })));
    }
    let strategy = match strategy {
        StrategyArg::Restricted => Strategy::Restricted,
        StrategyArg::Exhaustive => Strategy::Exhaustive,
    };
    let cert = match mode {
        VerifyMode::Strict => find_blocking_pair(&inst, &m, StabilityMode::Strict, strategy)?,
        VerifyMode::D => find_blocking_pair(&inst, &m, StabilityMode::DBlocking, strategy)?,
        VerifyMode::Coalition => find_blocking_coalition(&inst, &m)?,
        VerifyMode::Feasible => unreachable!("handled above"),
    };
    Ok(Done::doc(json!({ "feasibility": report, "stable": cert.is_none(), "certificate": cert })))
}

fn options(cli: &Cli, run: &RunFlags) -> SolveOptions {
    let mut o = SolveOptions::from_env();
    if let Some(b) = run.budget {
        o.budget = b;
    }
    o.canonical = run.canonical;
    o.parallel = o.parallel && cli.jobs != Some(1);
    o
}

fn solve_mode(m: ModeArg) -> SolveMode {
    match m {
        ModeArg::Stable => SolveMode::Stable,
        ModeArg::Feasible => SolveMode::Feasible,
        ModeArg::DStable => SolveMode::DStable,
        ModeArg::CStable => SolveMode::CStable,
    }
}

fn solve(cli: &Cli, path: &Path, algo: Algo, mode: ModeArg, run: &RunFlags) -> Result<Done, Fail> {
    let name = algo.to_possible_value().expect("named").get_name().to_string();
    let supported = match algo {
        Algo::Auto | Algo::Brute => true,
        Algo::XpMq => matches!(mode, ModeArg::Stable | ModeArg::Feasible),
        Algo::FewStudents | Algo::DpMt | Algo::GsBranch => mode == ModeArg::Stable,
    };
    if !supported {
        let mode_name = mode.to_possible_value().expect("named").get_name().to_string();
        return Err(Fail::usage(format!("--algo {name} does not support --mode {mode_name}")));
    }
    let inst = load(path)?;
    let opts = options(cli, run);
    let smode = solve_mode(mode);
    let res = match algo {
        Algo::Auto => solvers::solve_auto(&inst, smode, &opts)?,
        Algo::Brute => solvers::solve_bruteforce(&inst, smode, &opts)?,
        Algo::FewStudents => solvers::solve_few_students(&inst, &opts)?,
        Algo::XpMq => solvers::solve_xp_small_capacity(&inst, smode, &opts)?,
        Algo::DpMt => solvers::solve_dp_few_colleges_types(&inst, &opts)?,
        Algo::GsBranch => solvers::solve_gs_branching(&inst, &opts)?,
    };
    finish_solve(&inst, res, smode)
}

/// Re-verifies a yes-answer before printing it.
fn finish_solve(inst: &Instance, res: SolveResult, mode: SolveMode) -> Result<Done, Fail> {
    if let Some(m) = &res.matching {
        let ok = check_feasible(inst, m)?.feasible
            && match mode {
                SolveMode::Feasible => true,
                SolveMode::Stable => find_blocking_pair(inst, m, StabilityMode::Strict, Strategy::Exhaustive)?.is_none(),
                SolveMode::DStable => find_blocking_pair(inst, m, StabilityMode::DBlocking, Strategy::Exhaustive)?.is_none(),
                SolveMode::CStable => find_blocking_coalition(inst, m)?.is_none(),
            };
        if !ok {
            return Err(Error::VerificationFailed(format!("{} answer does not verify", res.algorithm)).into());
        }
    }
    let notes = res.warnings.iter().map(|w| format!("warning: {w}")).collect();
    Ok(Done { doc: Some(json!(res)), notes })
}

fn feasible(cli: &Cli, path: &Path, algo: FeasibleAlgo, emit_lp: Option<&Path>, run: &RunFlags) -> Result<Done, Fail> {
    let inst = load(path)?;
    if let Some(p) = emit_lp {
        write(p, &solvers::build_ilp(&inst)?.to_lp())?;
    }
    let opts = options(cli, run);
    let res = match algo {
        FeasibleAlgo::Ilp => solvers::solve_ilp_feasible(&inst, &opts)?,
        FeasibleAlgo::Brute => solvers::solve_bruteforce(&inst, SolveMode::Feasible, &opts)?,
    };
    finish_solve(&inst, res, SolveMode::Feasible)
}

fn need_k(g: &GenerateArgs) -> Result<usize, Fail> {
    g.k.ok_or_else(|| Fail::usage("--k is required for this source"))
}

fn source_text(g: &GenerateArgs) -> Result<String, Fail> {
    let p = g.input.as_deref().ok_or_else(|| Fail::usage("--input is required for this source"))?;
    read(p)
}

fn generate(g: &GenerateArgs) -> Result<Done, Fail> {
    let inst = match g.from {
        Source::Not1in3 => red::gen_from_not1in3(&red::parse_qdimacs(&source_text(g)?)?)?,
        Source::Sat22 => red::gen_from_sat22(&red::parse_dimacs(&source_text(g)?)?, red::Sat22Variant::Stable)?,
        Source::Sat22Feasible => {
            red::gen_from_sat22(&red::parse_dimacs(&source_text(g)?)?, red::Sat22Variant::Feasible)?
        }
        Source::Indset => red::gen_from_independent_set(&red::parse_graph(&source_text(g)?)?, need_k(g)?)?,
        Source::Setcover => red::gen_from_set_cover(&red::parse_set_system(&source_text(g)?, need_k(g)?)?)?,
        Source::Setpacking => red::gen_from_set_packing(&red::parse_set_system(&source_text(g)?, need_k(g)?)?)?,
        Source::Gadget => {
            let students: Vec<_> =
                (1..=g.students).map(|i| (format!("x{i}"), smtd::model::TypeVector::zeros(0))).collect();
            let colleges: Vec<_> =
                g.capacities.iter().enumerate().map(|(i, &q)| (format!("w{}", i + 1), q, Vec::new())).collect();
            red::gen_lemma2_gadget(&students, &colleges)?
        }
        Source::Random => {
            let p = smtd::random::RandomParams {
                max_n: g.max_n,
                max_m: g.max_m,
                max_t: g.max_t,
                ties: g.ties,
                lower_max: g.lower_max,
                ..Default::default()
            };
            if p.max_n == 0 || p.max_m == 0 || !(0.0..=1.0).contains(&p.ties) {
                return Err(Fail::usage("--max-n and --max-m must be positive and --ties a probability"));
            }
            smtd::random::random_instance(&mut smtd::random::rng(g.seed), &p)
        }
        Source::X3c => {
            let s = red::parse_set_system(&source_text(g)?, 0)?;
            let (inst, m) = red::gen_x3c_blocking_instance(&s)?;
            let matching: Value = serde_json::from_str(&serialize_matching(&m)).expect("matching json");
            return match &g.output {
                // the instance goes to the file, the matching to stdout
                Some(p) => {
                    write(p, &serialize_instance(&inst))?;
                    Ok(Done::doc(matching))
                }
                None => {
                    let instance: Value = serde_json::from_str(&serialize_instance(&inst)).expect("instance json");
                    Ok(Done::doc(json!({ "instance": instance, "matching": matching })))
                }
            };
        }
    };
    let text = serialize_instance(&inst);
    match &g.output {
        Some(p) => {
            write(p, &text)?;
            Ok(Done { doc: None, notes: Vec::new() })
        }
        None => Ok(Done::doc(serde_json::from_str(&text).expect("instance json"))),
    }
}
