use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypersukp::dksh::{approx_dksh, solve_weighted, BaseOracle, DkshConfig, ExactBase, GreedyBase};
use hypersukp::exponents::table;
use hypersukp::gen::{generate, GenSpec};
use hypersukp::harness::{bench, verify, BenchFamily, BenchOptions, Check, VerifyOptions};
use hypersukp::io::{instance_to_string, read_instance, Instance, SolveRecord};
use hypersukp::oracle::{exact_dksh, exact_sukp, exact_weighted_dksh, OracleBudget};
use hypersukp::rational::{parse_rational, Rational};
use hypersukp::sukp::{approx_sukp, approx_sukp_traced, SukpConfig};
use hypersukp::{Error, Solution};

#[derive(Parser)]
#[command(name = "hypersukp", version, about = "Densest k-subhypergraph and set union knapsack approximations")]
struct Cli {
    /// Seed for randomized choices and generated instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on stdout; only the exit code reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an approximation algorithm on an instance file.
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Solve an instance by enumeration (small instances only).
    Exact {
        #[command(subcommand)]
        problem: ExactProblem,
    },
    /// Generate an instance from a JSON spec.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded property checks against exact oracles.
    Verify(VerifyArgs),
    /// Compare approximate and exact values over generated families.
    Bench(BenchArgs),
    /// Print the guarantee exponents.
    Exponents {
        #[arg(long, default_value_t = 6)]
        m_max: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Exact,
    Greedy,
}

impl Base {
    fn oracle(self) -> Arc<dyn BaseOracle> {
        match self {
            Base::Exact => Arc::new(ExactBase::default()),
            Base::Greedy => Arc::new(GreedyBase),
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum SolveProblem {
    Dksh {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Largest edge size; taken from the instance when absent.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = "1/10", value_parser = rational_arg)]
        epsilon: Rational,
        #[arg(long, value_enum, default_value_t = Base::Greedy)]
        base: Base,
        /// Also solve exactly when n is at most this.
        #[arg(long, default_value_t = 0)]
        exact_cutoff: usize,
    },
    Sukp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "1/10", value_parser = rational_arg)]
        epsilon: Rational,
        #[arg(long, default_value_t = 0)]
        exact_cutoff: usize,
        /// Print per-class and per-branch values as JSON lines first.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
enum ExactProblem {
    Dksh {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    Sukp {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One or more of: lemma22, lemma23, rounding4x, blowup, identities,
    /// feasibility, dksh, sukp, fptas.
    #[arg(required = true)]
    checks: Vec<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "1/10", value_parser = rational_arg)]
    epsilon: Rational,
    /// Largest order for the identities check.
    #[arg(long, default_value_t = 50)]
    m_max: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "dksh-uniform")]
    family: String,
    /// Comma-separated instance sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [8, 10, 12])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    per_n: usize,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "1/10", value_parser = rational_arg)]
    epsilon: Rational,
    #[arg(long, value_enum, default_value_t = Base::Greedy)]
    base: Base,
    /// Skip the exact oracle.
    #[arg(long)]
    no_exact: bool,
    /// Record wall-clock times (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    /// Also write PREFIX.jsonl and PREFIX.txt.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure categories mapped to exit codes.
enum Failure {
    Violation(String),
    Usage(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleRefused(_) => Failure::Refused(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Out {
    json: bool,
    quiet: bool,
    text: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn solution_line(out: &mut Out, sol: &Solution, method: &str, exponent: Option<Rational>) {
    let record = SolveRecord::new(sol, method, exponent);
    if out.json {
        out.line(record.to_json());
    } else {
        out.line(format!(
            "value {}  cost {}  method {}  vertices {:?}",
            sol.value, sol.total_cost, method, sol.vertices
        ));
    }
}

fn max_edge_size(inst: &Instance) -> usize {
    match inst {
        Instance::Hypergraph(g) => g.edge_sizes().into_iter().max().unwrap_or(g.m_cap()),
        Instance::Weighted(g) => g.base().edge_sizes().into_iter().max().unwrap_or(g.m_cap()),
        Instance::Sukp(s) => s.max_edge_size(),
    }
}

fn solve(cli: &Cli, problem: &SolveProblem, out: &mut Out) -> Result<(), Failure> {
    let seed = cli.seed.unwrap_or(0);
    match problem {
        SolveProblem::Dksh { input, k, m, epsilon, base, exact_cutoff } => {
            let inst = read_instance(input)?;
            let m = m.unwrap_or_else(|| max_edge_size(&inst).max(1));
            let cfg = DkshConfig { epsilon: epsilon.clone(), seed, ..DkshConfig::default() }
                .with_base(base.oracle())
                .with_exact_cutoff(*exact_cutoff);
            let sol = match &inst {
                Instance::Hypergraph(g) => approx_dksh(g, *k, m, &cfg)?,
                Instance::Weighted(g) => solve_weighted(g, *k, |h, kk| approx_dksh(h, kk, m, &cfg))?,
                Instance::Sukp(_) => return Err(Failure::Usage("solve dksh needs a hypergraph instance".into())),
            };
            if sol.vertices.len() > *k {
                return Err(Failure::Violation(format!("{} vertices selected for k = {k}", sol.vertices.len())));
            }
            let method = format!("approx-dksh/{}", cfg.base.name());
            solution_line(out, &sol, &method, cfg.guarantee_exponent(m));
        }
        SolveProblem::Sukp { input, epsilon, exact_cutoff, trace } => {
            let Instance::Sukp(inst) = read_instance(input)? else {
                return Err(Failure::Usage("solve sukp needs a knapsack instance".into()));
            };
            let cfg = SukpConfig { epsilon: epsilon.clone(), exact_cutoff_n: *exact_cutoff, seed, ..SukpConfig::default() };
            let sol = if *trace {
                let (sol, events) = approx_sukp_traced(&inst, &cfg)?;
                for e in events {
                    out.line(e.to_json());
                }
                sol
            } else {
                approx_sukp(&inst, &cfg)?
            };
            if !inst.is_feasible(&sol) {
                return Err(Failure::Violation(format!("selection costs {} over budget {}", sol.total_cost, inst.budget())));
            }
            let exponent = hypersukp::exponents::alpha(inst.max_edge_size().max(1) as u64).ok();
            solution_line(out, &sol, "approx-sukp", exponent);
        }
    }
    Ok(())
}

fn exact(problem: &ExactProblem, out: &mut Out) -> Result<(), Failure> {
    let budget = OracleBudget::default();
    let sol = match problem {
        ExactProblem::Dksh { input, k } => match read_instance(input)? {
            Instance::Hypergraph(g) => exact_dksh(&g, *k, &budget)?,
            Instance::Weighted(g) => exact_weighted_dksh(&g, *k, &budget)?,
            Instance::Sukp(_) => return Err(Failure::Usage("exact dksh needs a hypergraph instance".into())),
        },
        ExactProblem::Sukp { input } => match read_instance(input)? {
            Instance::Sukp(inst) => exact_sukp(&inst, &budget)?,
            _ => return Err(Failure::Usage("exact sukp needs a knapsack instance".into())),
        },
    };
    solution_line(out, &sol, "exact", Some(Rational::from_integer(0.into())));
    Ok(())
}

fn gen_cmd(cli: &Cli, spec: &Path, target: Option<&Path>, out: &mut Out) -> Result<(), Failure> {
    let raw = std::fs::read_to_string(spec).map_err(Error::from)?;
    let mut spec: GenSpec = serde_json::from_str(&raw)
        .map_err(|e| Error::Parse { location: spec.display().to_string(), message: e.to_string() })?;
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    let text = instance_to_string(&generate(&spec)?);
    match target {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => out.text.push_str(&text),
    }
    Ok(())
}

fn verify_cmd(cli: &Cli, args: &VerifyArgs, out: &mut Out) -> Result<(), Failure> {
    let checks: Vec<Check> = args.checks.iter().map(|c| c.parse()).collect::<Result<_, Error>>()?;
    let opts = VerifyOptions {
        trials: args.trials,
        seed: cli.seed.unwrap_or(0),
        m: args.m,
        n: args.n,
        k: args.k,
        epsilon: args.epsilon.clone(),
        m_max: args.m_max,
        oracle_budget: OracleBudget::default(),
    };
    let mut failed = Vec::new();
    for check in checks {
        let report = verify(check, &opts)?;
        if !report.passed() {
            failed.push(check.name());
        }
        out.line(if out.json { report.to_json() } else { report.summary() });
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("violations in {}", failed.join(", "))))
    }
}

fn bench_cmd(cli: &Cli, args: &BenchArgs, out: &mut Out) -> Result<(), Failure> {
    let family: BenchFamily = args.family.parse()?;
    let opts = BenchOptions {
        family,
        n_values: args.n.clone(),
        per_n: args.per_n,
        m: args.m,
        k: args.k,
        seed: cli.seed.unwrap_or(0),
        epsilon: args.epsilon.clone(),
        base: args.base.oracle(),
        exact: !args.no_exact,
        timings: args.timings,
        oracle_budget: OracleBudget::default(),
    };
    let report = bench(&opts)?;
    let (jsonl, table) = (report.to_jsonl(), report.to_table());
    if let Some(prefix) = &args.out {
        let with_ext = |ext: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(ext);
            PathBuf::from(p)
        };
        std::fs::write(with_ext(".jsonl"), &jsonl).map_err(Error::from)?;
        std::fs::write(with_ext(".txt"), &table).map_err(Error::from)?;
    }
    out.text.push_str(if out.json { &jsonl } else { &table });
    Ok(())
}

fn exponents_cmd(m_max: u64, out: &mut Out) -> Result<(), Failure> {
    if m_max < 2 {
        return Err(Failure::Usage("--m-max must be at least 2".into()));
    }
    let rows = table(m_max)?;
    if out.json {
        for row in rows {
            out.line(serde_json::to_string(&row).expect("rows serialize"));
        }
    } else {
        out.line(format!("{:>3}  {:>10}  {:>10}  {:>10}", "m", "theta", "alpha", "gamma"));
        for row in rows {
            let gamma = row.gamma.map_or_else(|| "-".to_string(), |g| g.to_string());
            out.line(format!("{:>3}  {:>10}  {:>10}  {:>10}", row.m, row.theta.to_string(), row.alpha.to_string(), gamma));
        }
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve { problem } => solve(cli, problem, out),
        Command::Exact { problem } => exact(problem, out),
        Command::Gen { spec, out: target } => gen_cmd(cli, spec, target.as_deref(), out),
        Command::Verify(args) => verify_cmd(cli, args, out),
        Command::Bench(args) => bench_cmd(cli, args, out),
        Command::Exponents { m_max } => exponents_cmd(*m_max, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default_level)).init();

    let mut out = Out { json: cli.json, quiet: cli.quiet, text: String::new() };
    let result = run(&cli, &mut out);
    if !out.quiet {
        print!("{}", out.text);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Violation(m) => (1, m),
                Failure::Usage(m) => (2, m),
                Failure::Refused(m) => (3, m),
            };
            if !cli.quiet {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
