use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gas_core::harness::{export_results, run_single, Algorithm, BenchmarkPlan, BenchmarkResults};
use gas_core::testbed::registry;
use gas_core::Error;

#[derive(Parser)]
#[command(
    name = "gas",
    version,
    about = "Global optimization with GAS and baseline solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Benchmark runs, curves and the function list.
    Bench {
        #[command(subcommand)]
        action: Bench,
    },
    /// One run of one solver on one function.
    Solve {
        #[arg(long, default_value = "gas")]
        algo: String,
        #[arg(long)]
        function: String,
        #[arg(long, value_parser = parse_count)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Bench {
    /// Run every algorithm on every function and write the result files.
    Run {
        #[arg(long, default_value = "gas,bh,cs,de")]
        algos: String,
        /// `all`, `2d`, `lj`, `rastrigin` or a comma-separated list of names.
        #[arg(long, default_value = "all")]
        functions: String,
        #[arg(long, value_parser = parse_count)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute summary and curves from an existing `traces.csv`.
    Curves {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the function registry as JSON.
    List,
}

/// Non-negative integer, also written in scientific notation (`1e6`).
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("`{s}` is not a whole number of reads")),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            algo,
            function,
            budget,
            seed,
        } => {
            let algo: Algorithm = algo.parse()?;
            let trace = run_single(algo, &function, budget, seed)?;
            let point: Vec<String> = trace.best_position.iter().map(|v| v.to_string()).collect();
            println!("algorithm: {algo}");
            println!("function:  {function}");
            println!("status:    {}", trace.status.as_str());
            println!("best:      [{}]", point.join(", "));
            println!("value:     {}", trace.best_value);
            println!("reads:     {}", trace.reads_used);
            if let Some(r) = trace.solved_at_reads {
                println!("solved at: {r}");
            }
        }
        Command::Bench { action } => match action {
            Bench::Run {
                algos,
                functions,
                budget,
                runs,
                seed,
                workers,
                out,
            } => {
                let algorithms = Algorithm::parse_list(&algos)?;
                let functions = registry().select(&functions)?;
                let plan = BenchmarkPlan::new(algorithms, functions, budget, runs, seed)?;
                let results = plan.execute(workers)?;
                export_results(&results, &out)?;
                let solved = results
                    .records
                    .iter()
                    .filter(|r| r.trace.is_solved())
                    .count();
                eprintln!(
                    "{solved}/{} runs solved; results in {}",
                    results.records.len(),
                    out.display()
                );
            }
            Bench::Curves { input, out } => {
                let results = BenchmarkResults::load(&input)?;
                export_results(&results, &out)?;
            }
            Bench::List => println!("{}", registry().manifest_json()),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Csv(_) | Error::Json(_) => ExitCode::FAILURE,
                _ => ExitCode::from(2),
            }
        }
    }
}
