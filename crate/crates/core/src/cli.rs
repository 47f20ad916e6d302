//! Command-line front end. `run` returns the process exit code:
//! 0 on an optimal or feasible result, 2 when the model (or a replayed
//! solution) is infeasible, 1 on usage, parse or solver-limit errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{
    self, BoundsRecord, EvaluationReport, FrontRecord, FuzzyProgrammingRecord,
    GlobalCriterionRecord, Method, RunReport, SolutionTables,
};
use crate::model::{self, CompileOptions, Instance, Objective, MINUTES_PER_HOUR};
use crate::scalarize::{
    self, GlobalCriterionConfig, Normalization, PayoffTable, ScalarizeError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mistp", version, about = "Fuzzy multi-objective solid transportation solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile the instance and run a solution method.
    Solve(SolveArgs),
    /// Replay a solution against an instance and report row feasibility.
    Evaluate(EvaluateArgs),
    /// Parse and validate an instance.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Single,
    FuzzyProgramming,
    GlobalCriterion,
    WeightedSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Cost,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    ByIdeal,
    ByRange,
}

#[derive(Debug, Args)]
pub struct ConfidenceArgs {
    /// Credibility level for the cost objective.
    #[arg(long, default_value_t = 0.9)]
    pub eta: f64,
    /// Credibility level for the time objective.
    #[arg(long, default_value_t = 0.9)]
    pub gamma: f64,
    /// Divisor applied to handling times (60 for minutes, 1 for hours).
    #[arg(long, default_value_t = MINUTES_PER_HOUR)]
    pub handling_divisor: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::FuzzyProgramming)]
    pub method: MethodArg,
    /// Objective for `--method single`.
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Cost)]
    pub objective: ObjectiveArg,
    #[command(flatten)]
    pub confidence: ConfidenceArgs,
    /// Injected payoff bounds `L1,U1,L2,U2`.
    #[arg(long, value_parser = parse_list::<4>)]
    pub bounds: Option<[f64; 4]>,
    /// Global-criterion reference point `L1,L2`.
    #[arg(long, value_parser = parse_list::<2>)]
    pub ideal: Option<[f64; 2]>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, value_enum, default_value_t = NormalizationArg::ByIdeal)]
    pub normalization: NormalizationArg,
    /// ε step of the global-criterion sweep.
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Outer-approximation rounds after the sweep (0 reports the sweep optimum).
    #[arg(long, default_value_t = 30)]
    pub refinements: usize,
    /// Number of weights for the weighted-sum scan.
    #[arg(long, conflicts_with = "weights_file")]
    pub weights: Option<usize>,
    /// File of weights in [0, 1], separated by commas or whitespace.
    #[arg(long)]
    pub weights_file: Option<PathBuf>,
    /// Draw `--weights` random weights from this seed instead of spacing them evenly.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Front CSV path (weighted-sum or global-criterion).
    #[arg(long)]
    pub front: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    #[command(flatten)]
    pub confidence: ConfidenceArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub instance: PathBuf,
}

const DEFAULT_WEIGHT_COUNT: usize = 21;

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0f64; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ERROR,
            message: message.into(),
        }
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<model::ModelError> for Failure {
    fn from(e: model::ModelError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<ScalarizeError> for Failure {
    fn from(e: ScalarizeError) -> Self {
        let code = if e.is_infeasible() {
            EXIT_INFEASIBLE
        } else {
            EXIT_ERROR
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(&a),
        Command::Evaluate(a) => evaluate(&a),
        Command::Validate(a) => validate(&a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => Ok(io::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compile(instance: &Instance, c: &ConfidenceArgs) -> Result<model::CompiledModel, Failure> {
    if !(c.handling_divisor > 0.0 && c.handling_divisor.is_finite()) {
        return Err(Failure::usage(format!(
            "--handling-divisor must be positive, got {}",
            c.handling_divisor
        )));
    }
    let opts = CompileOptions {
        handling_divisor: c.handling_divisor,
    };
    Ok(model::compile_with(instance, c.eta, c.gamma, &opts)?)
}

fn load_weights(a: &SolveArgs) -> Result<Vec<f64>, Failure> {
    if let Some(path) = &a.weights_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let weights = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Failure::usage(format!("{}: {t:?}: {e}", path.display())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if weights.is_empty() {
            return Err(Failure::usage(format!("{} lists no weights", path.display())));
        }
        return Ok(weights);
    }
    let count = a.weights.unwrap_or(DEFAULT_WEIGHT_COUNT);
    if count == 0 {
        return Err(Failure::usage("--weights must be at least 1"));
    }
    Ok(match a.seed {
        Some(seed) => scalarize::random_weights(count, seed),
        None => scalarize::evenly_spaced_weights(count),
    })
}

fn solve(a: &SolveArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let instance = io::parse_instance(&a.instance)?;
    let model = compile(&instance, &a.confidence)?;
    let digest = io::instance_digest(&instance);
    let injected = match a.bounds {
        Some([l1, u1, l2, u2]) => Some(PayoffTable::injected(l1, u1, l2, u2)?),
        None => None,
    };
    let c = &a.confidence;

    let mut report = match a.method {
        MethodArg::Single => {
            let which = match a.objective {
                ObjectiveArg::Cost => Objective::Cost,
                ObjectiveArg::Time => Objective::Time,
            };
            let mut stats = scalarize::SolveStats::default();
            let options = crate::milp::SolverOptions::default();
            let (sol, _) = scalarize::solve_lexicographic(&model, which, &options, &mut stats)?;
            let mut r = RunReport::new(digest, Method::Single, c.eta, c.gamma, c.handling_divisor, &sol);
            r.objective = Some(which);
            r.solver = stats;
            r
        }
        MethodArg::FuzzyProgramming => {
            let bounds = match injected {
                Some(b) => b,
                None => scalarize::payoff_table(&model)?,
            };
            let out = scalarize::solve_fuzzy_programming(&model, &bounds)?;
            let mut r = RunReport::new(
                digest,
                Method::FuzzyProgramming,
                c.eta,
                c.gamma,
                c.handling_divisor,
                &out.solution,
            );
            r.bounds = Some(BoundsRecord::from(&bounds));
            r.fuzzy_programming = Some(FuzzyProgrammingRecord {
                lambda: out.lambda,
                solver_lambda: out.solver_lambda,
                membership_cost: out.memberships[0],
                membership_time: out.memberships[1],
            });
            r.solver = bounds.stats;
            r.solver += out.stats;
            r
        }
        MethodArg::GlobalCriterion => {
            // The sweep spans the computed payoff range; injected bounds only
            // supply the by-range scale and the default reference point.
            let computed = scalarize::payoff_table(&model)?;
            let config = GlobalCriterionConfig {
                ideal: a.ideal.or_else(|| injected.as_ref().map(|b| b.lower)),
                q: a.q,
                normalization: match a.normalization {
                    NormalizationArg::ByIdeal => Normalization::ByIdeal,
                    NormalizationArg::ByRange => Normalization::ByRange,
                },
                range: injected
                    .as_ref()
                    .map(|b| [b.range(Objective::Cost), b.range(Objective::Time)]),
                resolution: a.resolution,
                max_refinements: a.refinements,
                ..GlobalCriterionConfig::default()
            };
            let out = scalarize::solve_global_criterion(&model, &computed, &config)?;
            if let Some(path) = &a.front {
                io::write(path, &io::sweep_front_csv(&out.frontier)?)?;
            }
            let mut r = RunReport::new(
                digest,
                Method::GlobalCriterion,
                c.eta,
                c.gamma,
                c.handling_divisor,
                &out.solution,
            );
            r.bounds = Some(BoundsRecord::from(injected.as_ref().unwrap_or(&computed)));
            r.global_criterion = Some(GlobalCriterionRecord {
                g: out.g,
                q: config.q,
                normalization: config.normalization,
                ideal: out.ideal,
                scale: out.scale,
                sweep_g: out.frontier_g,
                sweep_points: out.frontier.len(),
                lower_bound: out.lower_bound,
                bound_gap: out.bound_gap,
                refinements: out.refinements,
            });
            r.solver = computed.stats;
            r.solver += out.stats;
            r
        }
        MethodArg::WeightedSum => {
            let weights = load_weights(a)?;
            let bounds = match injected {
                Some(b) => b,
                None => scalarize::payoff_table(&model)?,
            };
            let out = scalarize::weighted_sum_front(&model, &bounds, &weights)?;
            if let Some(path) = &a.front {
                io::write(path, &io::weighted_front_csv(&out.front)?)?;
            }
            // The report's headline solution is the front's cost-minimal end.
            let head = &out.front[0];
            let mut r = RunReport::new(
                digest,
                Method::WeightedSum,
                c.eta,
                c.gamma,
                c.handling_divisor,
                &head.solution,
            );
            r.bounds = Some(BoundsRecord::from(&bounds));
            r.front = Some(
                out.front
                    .iter()
                    .map(|p| FrontRecord {
                        w: p.weight,
                        f1: p.f1,
                        f2: p.f2,
                        solution: SolutionTables::from_solution(&p.solution),
                    })
                    .collect(),
            );
            r.solver = bounds.stats;
            r.solver += out.stats;
            r
        }
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    emit(a.out.as_deref(), &report.to_json())?;
    Ok(EXIT_OK)
}

fn evaluate(a: &EvaluateArgs) -> Result<i32, Failure> {
    let instance = io::parse_instance(&a.instance)?;
    let solution = io::parse_solution(&a.solution, instance.dims)?;
    let c = &a.confidence;
    if !(c.handling_divisor > 0.0 && c.handling_divisor.is_finite()) {
        return Err(Failure::usage(format!(
            "--handling-divisor must be positive, got {}",
            c.handling_divisor
        )));
    }
    let opts = CompileOptions {
        handling_divisor: c.handling_divisor,
    };
    let evaluation = model::evaluate_with(&instance, &solution, c.eta, c.gamma, &opts)?;
    let report = EvaluationReport {
        instance_digest: io::instance_digest(&instance),
        eta: c.eta,
        gamma: c.gamma,
        handling_divisor: c.handling_divisor,
        violated_rows: evaluation.violated().count(),
        evaluation: &evaluation,
    };
    emit(a.out.as_deref(), &report.to_json())?;
    for row in evaluation.violated() {
        eprintln!(
            "violated: {} activity {} {:?} {}",
            row.kind, row.activity, row.sense, row.rhs
        );
    }
    Ok(if evaluation.feasible {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn validate(a: &ValidateArgs) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(&a.instance)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", a.instance.display())))?;
    let instance = io::parse_instance_unchecked(&text)?;
    let report = instance.validate();
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if !report.is_ok() {
        for e in &report.errors {
            eprintln!("error: {e}");
        }
        return Ok(EXIT_ERROR);
    }
    let d = instance.dims;
    println!(
        "ok: m={} n={} K={} l={} digest={}",
        d.m,
        d.n,
        d.k,
        d.l,
        io::instance_digest(&instance)
    );
    Ok(EXIT_OK)
}
