use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use cosmeasure::generators::GeneratorSpec;
use cosmeasure::solvers::{solve, Method, SolverConfig};
use cosmeasure::testset_io::{benchmark_grid, build_corpus, load_case};
use cosmeasure_bench::{
    accuracy_profile, agreement_table, digit_grid, profile_svg, read_records_csv, run_benchmark,
    write_agreement_csv, write_profile_csv, write_records_csv, BenchPlan,
};

#[derive(Parser)]
#[command(
    name = "cosmeasure",
    version,
    about = "Cosine measure of positive spanning sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a stored corpus with a manifest.
    Generate {
        /// JSON array of generator specs; defaults to the benchmark grid.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Dimensions of the benchmark grid.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5, 6])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the cosine measure of one stored case.
    Solve {
        case: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "vertex_enum")]
        methods: Vec<Method>,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        lp_iterations: usize,
    },
    /// Run a benchmark sweep and write accuracy records as CSV.
    Bench {
        /// Bench plan JSON; flags below override its fields.
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<Method>>,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        rotations: Option<usize>,
        #[arg(long, default_value = "records.csv")]
        out: PathBuf,
    },
    /// Accuracy profile, SVG plot and agreement table from a record CSV.
    Profile {
        records: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    if !msg.is_empty() {
                        msg.push_str(": ");
                    }
                    msg.push_str(&cause);
                }
            }
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Generate {
            plan,
            dims,
            seed,
            out,
        } => {
            let specs: Vec<GeneratorSpec> = match plan {
                Some(p) => {
                    let text = fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", p.display()))?
                }
                None => benchmark_grid(&dims, seed),
            };
            let manifest = build_corpus(&specs, &out)?;
            println!("wrote {} cases to {}", manifest.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            case,
            methods,
            budget_secs,
            seed,
            lp_iterations,
        } => {
            let tc = load_case(&case)?;
            let cfg = SolverConfig {
                time_budget: budget_secs.map(Duration::from_secs_f64),
                rng_seed: seed,
                lp_iterations,
                ..Default::default()
            };
            let mut failed = false;
            for method in methods {
                match solve(&tc.set, method, &cfg) {
                    Ok(rep) => {
                        let r = &rep.result;
                        println!(
                            "{method}: cm = {} ({}, {} cosine vector{}, {:.3} s)",
                            r.value,
                            r.status.name(),
                            r.cosine_vectors.len(),
                            if r.cosine_vectors.len() == 1 { "" } else { "s" },
                            r.stats.wall_time.as_secs_f64()
                        );
                    }
                    Err(e) => {
                        eprintln!("{method}: {e}");
                        failed = true;
                    }
                }
            }
            if let Some(t) = tc.known_cm {
                println!("known: cm = {t}");
            }
            Ok(if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Bench {
            plan,
            corpus,
            methods,
            budget_secs,
            seed,
            workers,
            rotations,
            out,
        } => {
            let mut bp = match (plan, corpus.clone()) {
                (Some(p), _) => BenchPlan::from_file(&p)?,
                (None, Some(c)) => BenchPlan::new(c, Method::ALL.to_vec()),
                (None, None) => bail!("either --plan or --corpus is required"),
            };
            if let Some(c) = corpus {
                bp.corpus = c;
            }
            if let Some(m) = methods {
                bp.methods = m;
            }
            if let Some(b) = budget_secs {
                bp.time_budget_secs = b;
            }
            if let Some(s) = seed {
                bp.master_seed = s;
            }
            if let Some(w) = workers {
                bp.parallel_workers = w;
            }
            if let Some(r) = rotations {
                bp.rotations_per_instance = r;
            }
            let outcome = run_benchmark(&bp)?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_records_csv(&outcome.records, BufWriter::new(file))?;
            println!(
                "{} records written to {}",
                outcome.records.len(),
                out.display()
            );
            for f in &outcome.failures {
                eprintln!("failed: {f}");
            }
            Ok(if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Profile { records, out } => {
            let file =
                File::open(&records).with_context(|| format!("opening {}", records.display()))?;
            let recs = read_records_csv(io::BufReader::new(file))?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let table = agreement_table(&recs);
            write_agreement_csv(&table, File::create(out.join("agreement.csv"))?)?;
            let profile = accuracy_profile(&recs, &digit_grid())?;
            write_profile_csv(&profile, File::create(out.join("profile.csv"))?)?;
            File::create(out.join("profile.svg"))?.write_all(profile_svg(&profile).as_bytes())?;
            for (m, count) in &profile.universe {
                let curve = profile.curve(*m).unwrap_or_default();
                println!("{m}: {count} runs, {:.3} with at least 8 digits", curve[32]);
            }
            if !table.is_empty() {
                let worst = table.iter().map(|r| r.spread).fold(0.0, f64::max);
                println!(
                    "{} cases without reference value, largest spread {worst:.3e}",
                    table.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
