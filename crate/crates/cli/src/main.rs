//! Command-line harness: generate instances, solve them, validate tours,
//! consult the brute-force oracles, and run benchmark sweeps.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use aisle_cop::harness::{emit_results, run_benchmark, BenchmarkConfig};
use aisle_cop::instances::{
    adversarial_budget, gen_adversarial, gen_zipf, load_instance, save_instance, GenConfig,
};
use aisle_cop::oracle::{oracle_cop, oracle_cop_fr, oracle_cop_sc};
use aisle_cop::single_column::solve_osc;
use aisle_cop::{parse_vertex_line, validate_tour, Algorithm, Variant};

#[derive(Parser)]
#[command(
    name = "aisle-cop",
    version,
    about = "Budget-constrained reward routing on aisle graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file (Zipf block rewards, or the adversarial family).
    Generate(GenerateArgs),
    /// Solve an instance with one algorithm.
    Solve(SolveArgs),
    /// Validate tours against an instance and budget.
    Validate(ValidateArgs),
    /// Run a brute-force oracle on a small instance.
    Oracle(OracleArgs),
    /// Run a benchmark sweep from a key=value config file.
    Benchmark(BenchmarkArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of rows.
    #[arg(long)]
    m: usize,
    /// Number of inner columns (ignored with --adversarial, which is square).
    #[arg(long, required_unless_present = "adversarial")]
    n: Option<usize>,
    /// Zipf skew; 0 is uniform.
    #[arg(long, default_value_t = 0.0, conflicts_with = "adversarial")]
    theta: f64,
    /// Side of the constant-reward blocks.
    #[arg(long, default_value_t = 5, conflicts_with = "adversarial")]
    block: usize,
    #[arg(long, default_value_t = 0, conflicts_with = "adversarial")]
    seed: u64,
    /// Emit the left-only variant instead of two-sided.
    #[arg(long, value_parser = parse_variant, default_value = "two_sided")]
    variant: Variant,
    /// Generate the adversarial family instead of Zipf rewards.
    #[arg(long)]
    adversarial: bool,
    /// Adversarial epsilon in (0, 2).
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Adversarial apex reward; defaults to 3m - 5.
    #[arg(long)]
    apex: Option<f64>,
    /// Output instance path.
    #[arg(long)]
    out: PathBuf,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::from_keyword(s).ok_or_else(|| format!("expected two_sided or left_only, got {s:?}"))
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    algorithm: String,
    #[arg(long)]
    budget: usize,
    /// Print the tour as one `row:col ...` line.
    #[arg(long)]
    emit_tour: bool,
    /// Write the single-column reward table as CSV (osc only).
    #[arg(long)]
    dump_dp: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Tour file: one whitespace-separated `row:col` sequence per line.
    #[arg(long)]
    tour: PathBuf,
    #[arg(long)]
    budget: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    budget: usize,
    /// cop (general), fr (full rows), or sc (single column).
    #[arg(long)]
    kind: String,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long)]
    config: PathBuf,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Generate(args) => generate(args),
        Command::Solve(args) => solve(args),
        Command::Validate(args) => validate(args),
        Command::Oracle(args) => oracle(args),
        Command::Benchmark(args) => benchmark(args),
    }
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let g = if args.adversarial {
        let g = gen_adversarial(args.m, args.epsilon, args.apex)?;
        println!(
            "adversarial m={} epsilon={} paired budget {}",
            args.m,
            args.epsilon,
            adversarial_budget(args.m)
        );
        g
    } else {
        let n = args.n.expect("clap enforces --n without --adversarial");
        gen_zipf(&GenConfig {
            block: args.block,
            ..GenConfig::new(args.m, n, args.theta, args.seed)
        })
    };
    let g = match args.variant {
        Variant::TwoSided => g,
        Variant::LeftOnly => g.to_left_only(),
    };
    save_instance(&g, &args.out)?;
    println!(
        "wrote {} ({}x{} {}, total reward {})",
        args.out.display(),
        g.m(),
        g.n(),
        g.variant(),
        g.total_reward()
    );
    Ok(ExitCode::SUCCESS)
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let g = load_instance(&args.instance)?;
    let algorithm: Algorithm = args.algorithm.parse()?;

    if let Some(path) = &args.dump_dp {
        if algorithm != Algorithm::Osc {
            bail!("--dump-dp is only meaningful with --algorithm osc");
        }
        let (_, tables) = solve_osc(&g, args.budget, false);
        let mut out = String::new();
        let header: Vec<String> = (0..=tables.half_budget())
            .map(|b| format!("b{b}"))
            .collect();
        writeln!(out, "row,{}", header.join(","))?;
        for i in 1..=tables.rows() {
            let cells: Vec<String> = (0..=tables.half_budget())
                .map(|b| match tables.reward(i, b) {
                    Some(v) => format!("{v}"),
                    None => "-inf".to_string(),
                })
                .collect();
            writeln!(out, "{i},{}", cells.join(","))?;
        }
        fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote reward table to {}", path.display());
    }

    let result = algorithm.solve(&g, args.budget)?;
    let report = validate_tour(&g, result.tour.vertices(), args.budget);
    println!(
        "algorithm={} reward={} budget_used={} budget_limit={} valid={}",
        result.algorithm,
        result.reward,
        result.budget_used,
        result.budget_limit,
        report.passed()
    );
    if args.emit_tour {
        println!("{}", result.tour.to_line());
    }
    if !report.passed() {
        eprintln!("solver emitted an invalid tour: {report}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn validate(args: ValidateArgs) -> Result<ExitCode> {
    let g = load_instance(&args.instance)?;
    let text = fs::read_to_string(&args.tour)
        .with_context(|| format!("reading {}", args.tour.display()))?;
    let mut all_ok = true;
    let mut checked = 0usize;
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        checked += 1;
        match parse_vertex_line(line) {
            Ok(vertices) => {
                let report = validate_tour(&g, &vertices, args.budget);
                println!("line {}: {report}", line_no + 1);
                all_ok &= report.passed();
            }
            Err(msg) => {
                println!("line {}: FAIL parse error: {msg}", line_no + 1);
                all_ok = false;
            }
        }
    }
    if checked == 0 {
        bail!("{} contains no tours", args.tour.display());
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn oracle(args: OracleArgs) -> Result<ExitCode> {
    let g = load_instance(&args.instance)?;
    match args.kind.as_str() {
        "cop" => {
            let (reward, witness) = oracle_cop(&g, args.budget)?;
            println!("oracle=cop reward={reward}");
            println!(
                "witness: {}",
                witness
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        "fr" => println!("oracle=fr reward={}", oracle_cop_fr(&g, args.budget)?),
        "sc" => println!("oracle=sc reward={}", oracle_cop_sc(&g, args.budget)?),
        other => bail!("unknown oracle kind {other:?}; expected cop, fr, or sc"),
    }
    Ok(ExitCode::SUCCESS)
}

fn benchmark(args: BenchmarkArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = BenchmarkConfig::parse(&text)?;
    let records = run_benchmark(&cfg)?;
    let (raw, agg) = emit_results(&records, &cfg.output)?;
    println!(
        "{} records; wrote {} and {}",
        records.len(),
        raw.display(),
        agg.display()
    );
    Ok(ExitCode::SUCCESS)
}
