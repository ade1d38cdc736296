use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use treechar::graph::parse_graph_json;
use treechar::identity::verify;
use treechar::io::parse_matrix_csv;
use treechar::milp::{
    attach_objective, attach_side_constraints, build_model, emit, Checker, Format, Formulation, MilpModel,
    SolutionAssignment,
};
use treechar::oracle::{brute_force_optimize, exhaustive_converse_check, DEFAULT_MAX_N};
use treechar::problem::{unit_mu, DegreeBound, ObjectiveSpec, Sense, SideConstraints};
use treechar::{DenseMatrix, Error};

#[derive(Parser)]
#[command(
    name = "treechar",
    version,
    about = "Tree characterization checks, MILP model emission, and brute-force tree optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the identity and its consequences on a graph.
    Verify {
        /// Graph JSON: {"n": 3, "edges": [[1, 2, w], ...]} with 1-based labels.
        graph: PathBuf,
        /// Distance matrix CSV to check instead of the computed one.
        #[arg(long)]
        distance: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9, value_parser = positive)]
        tol: f64,
    },
    /// Write a MILP model in LP, MPS or JSON form.
    Emit {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = FormulationArg::Reduced)]
        formulation: FormulationArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Lp)]
        format: FormatArg,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file against a JSON model.
    Check {
        /// Model written by `emit --format json`.
        model: PathBuf,
        /// Solution as JSON {"name": value} or lines of `name value`.
        solution: PathBuf,
        #[arg(long, default_value_t = 1e-6, value_parser = positive)]
        tol: f64,
    },
    /// Optimize over all labeled trees by enumeration.
    Oracle {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Solve the identity for D on every graph with n vertices (n <= 5).
    ConverseCheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=5))]
        n: u64,
    },
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    /// Edge parameters μ as a CSV matrix; tree weights are 1/μ (default all ones).
    #[arg(long)]
    mu: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Wiener)]
    objective: ObjectiveArg,
    /// Demand matrix M (weighted and road objectives).
    #[arg(long)]
    demand: Option<PathBuf>,
    /// Construction cost matrix C (road objective).
    #[arg(long)]
    cost: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SenseArg::Min)]
    sense: SenseArg,
    /// Side constraints as JSON; the flags below are merged into it.
    #[arg(long)]
    constraints: Option<PathBuf>,
    /// Require edge `i-j` (1-based), repeatable.
    #[arg(long = "force", value_parser = parse_edge)]
    force: Vec<(usize, usize)>,
    /// Forbid edge `i-j` (1-based), repeatable.
    #[arg(long = "ban", value_parser = parse_edge)]
    ban: Vec<(usize, usize)>,
    /// Minimum degree of every vertex.
    #[arg(long)]
    min_degree: Option<usize>,
    /// Maximum degree of every vertex.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Bound on every pairwise distance.
    #[arg(long)]
    diameter: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Full,
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Lp,
    Mps,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Wiener,
    Weighted,
    Road,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    #[value(alias = "minimize")]
    Min,
    #[value(alias = "maximize")]
    Max,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['-', ',']).ok_or_else(|| format!("`{s}` is not an edge like 1-2"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{s}` is not an edge like 1-2"));
    Ok((num(a)?, num(b)?))
}

/// A failure carrying its exit code: 1 for domain failures, 2 for input problems.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::MissingVariable(_) => Failure::input(e.to_string()),
            _ => Failure::domain(e.to_string()),
        }
    }
}

type CliResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> treechar::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(graph: &Path, distance: Option<&Path>, tol: f64) -> CliResult {
    let g = load(graph, parse_graph_json)?;
    let d = distance.map(|p| load(p, parse_matrix_csv)).transpose()?;
    let report = verify(&g, d.as_ref(), tol)?;
    print_json(&report);
    for c in &report.checks {
        eprintln!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if !report.is_tree {
        if let Some(f) = report.first_failure() {
            eprintln!("not a tree: {} check failed", f.name);
        } else {
            eprintln!("not a tree");
        }
        return Ok(status(false));
    }
    Ok(status(report.all_hold()))
}

struct Problem {
    n: usize,
    mu: DenseMatrix,
    spec: ObjectiveSpec,
    sense: Sense,
    side: SideConstraints,
}

fn problem(args: &ProblemArgs) -> Result<Problem, Failure> {
    let n = args.n as usize;
    let mu = match &args.mu {
        Some(p) => load(p, parse_matrix_csv)?,
        None => unit_mu(n),
    };
    let matrix = |p: &Option<PathBuf>, flag: &str| -> Result<DenseMatrix, Failure> {
        let p = p.as_ref().ok_or_else(|| Failure::input(format!("objective needs --{flag}")))?;
        load(p, parse_matrix_csv)
    };
    let spec = match args.objective {
        ObjectiveArg::Wiener => ObjectiveSpec::Wiener,
        ObjectiveArg::Weighted => ObjectiveSpec::Weighted { demand: matrix(&args.demand, "demand")? },
        ObjectiveArg::Road => {
            ObjectiveSpec::Road { cost: matrix(&args.cost, "cost")?, demand: matrix(&args.demand, "demand")? }
        }
    };
    let sense = match args.sense {
        SenseArg::Min => Sense::Minimize,
        SenseArg::Max => Sense::Maximize,
    };
    let mut side = match &args.constraints {
        Some(p) => load(p, |t| serde_json::from_str::<SideConstraints>(t).map_err(Error::from))?,
        None => SideConstraints::default(),
    };
    side.forced_edges.extend(&args.force);
    side.banned_edges.extend(&args.ban);
    if args.min_degree.is_some() || args.max_degree.is_some() {
        side.degree_bounds.extend((1..=n).map(|v| DegreeBound {
            vertex: v,
            min: args.min_degree,
            max: args.max_degree,
        }));
    }
    if let Some(delta) = args.diameter {
        side.diameter = Some(side.diameter.map_or(delta, |d| d.min(delta)));
    }
    Ok(Problem { n, mu, spec, sense, side })
}

fn cmd_emit(args: &ProblemArgs, formulation: FormulationArg, format: FormatArg, out: Option<&Path>) -> CliResult {
    let p = problem(args)?;
    let formulation = match formulation {
        FormulationArg::Full => Formulation::Full,
        FormulationArg::Reduced => Formulation::Reduced,
    };
    let format = match format {
        FormatArg::Lp => Format::Lp,
        FormatArg::Mps => Format::Mps,
        FormatArg::Json => Format::Json,
    };
    let model = build_model(p.n, &p.mu, formulation)?;
    let model = attach_objective(model, &p.spec, p.sense)?;
    let model = attach_side_constraints(model, &p.side)?;
    let text = emit(&model, format);
    match out {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let c = model.counts();
    eprintln!(
        "n = {}, {}: {} binaries, {} distances, {} auxiliaries; {} characterization, {} edge lower-bound, {} McCormick, {} side rows",
        model.n,
        formulation.name(),
        c.binaries,
        c.distances,
        c.auxiliaries,
        c.characterization,
        c.edge_lower_bounds,
        c.mccormick,
        c.side
    );
    if let Some(note) = &model.aux_inventory.discrepancy {
        eprintln!("note: {note}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(model: &Path, solution: &Path, tol: f64) -> CliResult {
    let model = load(model, MilpModel::from_json)?;
    let s = load(solution, SolutionAssignment::parse)?;
    let report = Checker::new(&model).check(&s, tol)?;
    print_json(&report);
    for v in &report.violations {
        eprintln!("violated {}: lhs {} {} {} (excess {:.3e})", v.constraint, v.lhs, v.sense, v.rhs, v.excess);
    }
    for b in &report.bound_violations {
        eprintln!("out of bounds {}: {} not in [{}, {}]", b.variable, b.value, b.lower, b.upper);
    }
    for name in &report.integrality_violations {
        eprintln!("not binary: {name}");
    }
    let t = &report.tree;
    eprintln!(
        "edges {:?}: {}; distances {}",
        t.edges,
        if t.is_tree { "a tree" } else { "not a tree" },
        match t.max_distance_deviation {
            Some(dev) if t.distances_agree => format!("agree (max deviation {dev:.3e})"),
            Some(dev) => format!("disagree (max deviation {dev:.3e})"),
            None => "not compared".into(),
        }
    );
    eprintln!("{} (objective {})", if report.feasible { "feasible" } else { "infeasible" }, report.objective_value);
    Ok(status(report.feasible))
}

fn cmd_oracle(args: &ProblemArgs, workers: usize, max_n: usize) -> CliResult {
    let p = problem(args)?;
    let result = brute_force_optimize(p.n, &p.spec, p.sense, &p.side, &p.mu, workers, max_n)?;
    print_json(&result);
    eprintln!(
        "{} {} over {} of {} trees: {} ({} optimal trees), e.g. edges {:?}",
        match p.sense {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        },
        result.objective,
        result.evaluated,
        result.enumerated,
        result.best_value,
        result.ties,
        result.best_edges
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_converse(n: usize) -> CliResult {
    let report = exhaustive_converse_check(n)?;
    print_json(&report);
    eprintln!(
        "n = {n}: {} graphs, {} trees, {} consistent systems, {} counterexamples",
        report.graphs,
        report.trees,
        report.consistent,
        report.counterexamples.len()
    );
    Ok(status(report.holds()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { graph, distance, tol } => cmd_verify(graph, distance.as_deref(), *tol),
        Command::Emit { problem, formulation, format, out } => cmd_emit(problem, *formulation, *format, out.as_deref()),
        Command::Check { model, solution, tol } => cmd_check(model, solution, *tol),
        Command::Oracle { problem, workers, max_n } => cmd_oracle(problem, *workers, *max_n),
        Command::ConverseCheck { n } => cmd_converse(*n as usize),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
