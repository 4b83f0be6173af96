//! Command-line front end: instance files in, human-readable or JSON
//! reports out, with reproducible seeds and query accounting.

pub mod instance;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use polyshift_core::lindep::{
    solve_span_hitting_set, solve_span_randomized, solve_span_white_box, SpanQuery,
};
use polyshift_core::pit::{random_hitting_set, PitEngine};
use polyshift_core::solver::{
    self, achievable_epsilon, Algorithm, SetConfig, ShiftStatus, Strategy,
};
use polyshift_core::{Error, FieldSpec, Oracle, SeededRng};

use instance::Instance;
use report::JsonReport;

#[derive(Debug, Parser)]
#[command(
    name = "polyshift",
    about = "Decides whether two polynomials agree up to a shift of the inputs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Schwartz-Zippel identity tests and random-evaluation solving.
    Randomized,
    /// A generated random hitting set drives all decisions.
    HittingSet,
    /// A deterministic engine over a generated hitting set, scan-style.
    WhiteBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Main,
    Alt,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Instance file (see README for the format).
    pub file: PathBuf,
    /// Emit the report as JSON instead of plain text.
    #[arg(long)]
    pub json: bool,
    /// RNG seed; identical seeds reproduce identical reports.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Total error budget for randomized steps.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Field override, e.g. `p=101` or `rational`.
    #[arg(long)]
    pub field: Option<String>,
    /// Degree bound override for expression-backed oracles.
    #[arg(long)]
    pub degree_bound: Option<u32>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Randomized)]
    pub strategy: StrategyArg,
    /// Point count when a hitting set is generated.
    #[arg(long, default_value_t = 256)]
    pub hs_size: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a shift a with f(x+a) = g(x), or prove none exists.
    Set {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Main)]
        algorithm: AlgorithmArg,
        /// Exactly re-check any returned shift against dense expansions.
        #[arg(long)]
        verify_dense: bool,
        /// Verify a given shift (comma-separated elements) instead of
        /// searching for one.
        #[arg(long)]
        verify: Option<String>,
    },
    /// `set` with the alternative (essential-variables) algorithm.
    SetAlt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        verify_dense: bool,
    },
    /// Test whether f is identically zero.
    Pit {
        #[command(flatten)]
        common: Common,
    },
    /// Exact total degree of f.
    Degree {
        #[command(flatten)]
        common: Common,
    },
    /// Basis of the stabilizer {a : f(x+a) = f(x)}.
    Stabilizer {
        #[command(flatten)]
        common: Common,
    },
    /// Essential-variable count of f's top component and the change of
    /// coordinates that isolates them.
    EssentialVars {
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether g lies in the span of the h generators.
    Lindep {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Set { common, .. }
            | Command::SetAlt { common, .. }
            | Command::Pit { common }
            | Command::Degree { common }
            | Command::Stabilizer { common }
            | Command::EssentialVars { common }
            | Command::Lindep { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Set { .. } => "set",
            Command::SetAlt { .. } => "set-alt",
            Command::Pit { .. } => "pit",
            Command::Degree { .. } => "degree",
            Command::Stabilizer { .. } => "stabilizer",
            Command::EssentialVars { .. } => "essential-vars",
            Command::Lindep { .. } => "lindep",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(std::io::Error),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn parse_field_flag(common: &Common) -> Result<Option<FieldSpec>, Error> {
    common.field.as_deref().map(FieldSpec::parse).transpose()
}

/// Hitting sets generated on demand share one derivation of the user seed so
/// reports stay reproducible.
fn generated_hitting_set(
    common: &Common,
    inst: &Instance,
    degree: u32,
) -> polyshift_core::pit::HittingSet {
    let mut rng = SeededRng::new(common.seed ^ 0x9e37_79b9_7f4a_7c15);
    let circuit_size = inst
        .f
        .iter()
        .chain(inst.g.iter())
        .chain(inst.generators.iter())
        .map(|p| p.circuit.size() as u64)
        .sum::<u64>()
        .max(1);
    random_hitting_set(inst.n, degree, circuit_size, common.hs_size, inst.field, &mut rng)
}

fn build_strategy(common: &Common, inst: &Instance, degree: u32) -> Strategy {
    match common.strategy {
        StrategyArg::Randomized => Strategy::Randomized,
        StrategyArg::HittingSet => Strategy::HittingSet(generated_hitting_set(common, inst, degree)),
        StrategyArg::WhiteBox => Strategy::WhiteBox(PitEngine::hitting_set(
            generated_hitting_set(common, inst, degree),
        )),
    }
}

fn build_config(common: &Common, inst: &Instance, degree: u32, algorithm: Algorithm) -> SetConfig {
    SetConfig {
        epsilon: common.epsilon,
        strategy: build_strategy(common, inst, degree),
        seed: common.seed,
        algorithm,
        verify_with_dense: false,
    }
}

fn element_strings(values: &[polyshift_core::FieldElement]) -> Vec<String> {
    values.iter().map(|v| v.canonical_string()).collect()
}

fn parse_shift(text: &str, field: FieldSpec) -> Result<Vec<polyshift_core::FieldElement>, Error> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|part| field.parse_element(part))
        .collect()
}

/// Runs one parsed invocation and produces its report.
pub fn execute(cli: &Cli) -> Result<JsonReport, CliError> {
    let common = cli.command.common();
    let text = std::fs::read_to_string(&common.file)?;
    let inst = Instance::parse(&text, parse_field_flag(common)?)?;
    let start = Instant::now();
    let mut report = dispatch(cli, &inst)?;
    report.wall_time_ms = Some(start.elapsed().as_millis());
    Ok(report)
}

fn dispatch(cli: &Cli, inst: &Instance) -> Result<JsonReport, CliError> {
    let common = cli.command.common();
    let name = cli.command.name();
    let degree_override = common.degree_bound.or(inst.degree);
    match &cli.command {
        Command::Set {
            algorithm,
            verify_dense,
            verify,
            ..
        } => {
            let algorithm = match algorithm {
                AlgorithmArg::Main => Algorithm::Main,
                AlgorithmArg::Alt => Algorithm::Alt,
            };
            run_set(common, inst, name, algorithm, *verify_dense, verify.as_deref())
        }
        Command::SetAlt { verify_dense, .. } => {
            run_set(common, inst, name, Algorithm::Alt, *verify_dense, None)
        }
        Command::Pit { .. } => {
            let f = inst.require_f()?.oracle(degree_override);
            let mut cfg_strategy = build_strategy(common, inst, f.degree_bound());
            let mut engine = match &mut cfg_strategy {
                Strategy::Randomized => PitEngine::schwartz_zippel(
                    achievable_epsilon(inst.field, f.degree_bound(), common.epsilon),
                    common.seed,
                ),
                Strategy::HittingSet(hs) => PitEngine::hitting_set(hs.clone()),
                Strategy::WhiteBox(engine) => engine.clone(),
            };
            let zero = engine.is_zero(&f)?;
            let mut report = report_base(name, if zero { "zero" } else { "nonzero" }, common);
            report.queries_used = f.queries();
            Ok(report)
        }
        Command::Degree { .. } => {
            let f = inst.require_f()?.oracle(degree_override);
            let cfg = build_config(common, inst, f.degree_bound(), Algorithm::Main);
            let degree = solver::exact_degree(&f, f.degree_bound(), &cfg)?;
            let mut report = report_base(
                name,
                if degree.is_some() { "ok" } else { "zero-poly" },
                common,
            );
            report.degree = degree;
            report.queries_used = f.queries();
            Ok(report)
        }
        Command::Stabilizer { .. } => {
            let f = inst.require_f()?.oracle(degree_override);
            let cfg = build_config(common, inst, f.degree_bound(), Algorithm::Main);
            let d = solver::exact_degree(&f, f.degree_bound(), &cfg)?.unwrap_or(0);
            let stab = solver::stabilizer_basis(&f, d, &cfg)?;
            let mut report = report_base(name, "ok", common);
            report.stabilizer_dim = Some(stab.dim());
            report.stabilizer_basis =
                Some(stab.basis.iter().map(|v| element_strings(v)).collect());
            report.queries_used = f.queries();
            Ok(report)
        }
        Command::EssentialVars { .. } => {
            let f = inst.require_f()?.oracle(degree_override);
            let cfg = build_config(common, inst, f.degree_bound(), Algorithm::Main);
            let mut report = report_base(name, "ok", common);
            match solver::exact_degree(&f, f.degree_bound(), &cfg)? {
                Some(d) => {
                    let (m, a) = solver::essential_variables(&f, d, &cfg)?;
                    report.essential_count = Some(m);
                    report.transform = Some(
                        (0..a.rows())
                            .map(|i| element_strings(a.row(i)))
                            .collect(),
                    );
                }
                None => {
                    report.status = "zero-poly".to_string();
                    report.essential_count = Some(0);
                }
            }
            report.queries_used = f.queries();
            Ok(report)
        }
        Command::Lindep { .. } => {
            let target = inst.require_g()?.oracle(degree_override);
            let generators: Vec<Oracle> = inst
                .generators
                .iter()
                .map(|p| p.oracle(degree_override))
                .collect();
            let query = SpanQuery {
                target: target.clone(),
                generators: generators.clone(),
            };
            let max_degree = query
                .generators
                .iter()
                .chain(std::iter::once(&query.target))
                .map(Oracle::degree_bound)
                .max()
                .unwrap_or(1);
            let result = match common.strategy {
                StrategyArg::Randomized => {
                    let mut rng = SeededRng::new(common.seed);
                    let epsilon = achievable_epsilon(inst.field, max_degree, common.epsilon);
                    solve_span_randomized(&query, epsilon, &mut rng)?
                }
                StrategyArg::HittingSet => {
                    let hs = generated_hitting_set(common, inst, max_degree);
                    solve_span_hitting_set(&query, &hs)?
                }
                StrategyArg::WhiteBox => {
                    let hs = generated_hitting_set(common, inst, max_degree);
                    let mut engine = PitEngine::hitting_set(hs);
                    solve_span_white_box(&query, &mut engine)?
                }
            };
            let mut report = report_base(
                name,
                if result.solution().is_some() {
                    "solution"
                } else {
                    "no-solution"
                },
                common,
            );
            if let Some(sol) = result.solution() {
                report.coefficients = Some(element_strings(&sol.point));
                report.solution_dim = Some(sol.dim());
            }
            report.queries_used =
                target.queries() + generators.iter().map(Oracle::queries).sum::<u64>();
            Ok(report)
        }
    }
}

fn run_set(
    common: &Common,
    inst: &Instance,
    name: &str,
    algorithm: Algorithm,
    verify_dense: bool,
    verify: Option<&str>,
) -> Result<JsonReport, CliError> {
    let degree_override = common.degree_bound.or(inst.degree);
    let (f, g) = if verify_dense {
        (
            inst.require_f()?.oracle_with_dense(degree_override)?,
            inst.require_g()?.oracle_with_dense(degree_override)?,
        )
    } else {
        (
            inst.require_f()?.oracle(degree_override),
            inst.require_g()?.oracle(degree_override),
        )
    };
    let bound = f.degree_bound().max(g.degree_bound());
    let mut cfg = build_config(common, inst, bound, algorithm);
    cfg.verify_with_dense = verify_dense;
    if let Some(shift_text) = verify {
        let shift = parse_shift(shift_text, inst.field)?;
        let mut engine = match &cfg.strategy {
            Strategy::Randomized => PitEngine::schwartz_zippel(
                achievable_epsilon(inst.field, bound, common.epsilon),
                common.seed,
            ),
            Strategy::HittingSet(hs) => PitEngine::hitting_set(hs.clone()),
            Strategy::WhiteBox(engine) => engine.clone(),
        };
        let ok = solver::verify_shift(&f, &g, &shift, &mut engine)?;
        let mut report = report_base(name, if ok { "verified" } else { "rejected" }, common);
        report.shift = Some(element_strings(&shift));
        report.queries_used = f.queries() + g.queries();
        report.algorithm = algorithm_name(algorithm).to_string();
        return Ok(report);
    }
    let result = solver::solve(&f, &g, &cfg)?;
    let mut report = report_base(
        name,
        match &result.status {
            ShiftStatus::Shift(_) => "shift",
            ShiftStatus::Fail => "fail",
        },
        common,
    );
    if let ShiftStatus::Shift(a) = &result.status {
        report.shift = Some(element_strings(a));
    }
    report.queries_used = result.queries_used;
    report.algorithm = algorithm_name(algorithm).to_string();
    Ok(report)
}

fn algorithm_name(algorithm: Algorithm) -> &'static str {
    match algorithm {
        Algorithm::Main => "main",
        Algorithm::Alt => "alt",
    }
}

fn report_base(command: &str, status: &str, common: &Common) -> JsonReport {
    JsonReport::new(command, status, common.seed, common.epsilon, "main")
}

fn print_human(report: &JsonReport) {
    println!("status: {}", report.status);
    if let Some(shift) = &report.shift {
        println!("shift: [{}]", shift.join(", "));
    }
    if let Some(degree) = report.degree {
        println!("degree: {degree}");
    }
    if let Some(dim) = report.stabilizer_dim {
        println!("stabilizer dimension: {dim}");
    }
    if let Some(basis) = &report.stabilizer_basis {
        for row in basis {
            println!("stabilizer basis vector: [{}]", row.join(", "));
        }
    }
    if let Some(m) = report.essential_count {
        println!("essential variables: {m}");
    }
    if let Some(rows) = &report.transform {
        for row in rows {
            println!("transform row: [{}]", row.join(", "));
        }
    }
    if let Some(coeffs) = &report.coefficients {
        println!("coefficients: [{}]", coeffs.join(", "));
    }
    if let Some(dim) = report.solution_dim {
        println!("solution space dimension: {dim}");
    }
    println!("queries: {}", report.queries_used);
    if let Some(ms) = report.wall_time_ms {
        println!("time: {ms} ms");
    }
    println!(
        "seed: {} epsilon: {} algorithm: {}",
        report.seed, report.epsilon, report.algorithm
    );
}

/// Entry point: parses argv, runs, prints the report. Exit code 0 covers
/// completed computations (including a FAIL verdict); 2 is for usage or
/// input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.command.common().json;
    match execute(&cli) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print_human(&report);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
