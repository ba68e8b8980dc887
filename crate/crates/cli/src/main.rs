use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use polyrecon::consistency::assess;
use polyrecon::harness::{self, Family};
use polyrecon::io;
use polyrecon::oracle::{measure_angles, random_simple_polygon, OracleError};
use polyrecon::witness::reconstruct;
use polyrecon::{Algorithm, AngleData, Polygon};

#[derive(Parser)]
#[command(name = "polyrecon", version, about = "Reconstruct simple polygons from visibility angles")]
struct Cli {
    /// Log progress and near-miss witness sums to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random simple polygon.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure the visibility angles of a polygon.
    Measure {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild the visibility graph, and optionally the polygon, from angles.
    Reconstruct {
        #[arg(long)]
        angles: PathBuf,
        #[arg(long, default_value = "improved")]
        algorithm: Algorithm,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_poly: Option<PathBuf>,
    },
    /// Round-trip a polygon through measurement, reconstruction and embedding.
    Verify {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run both algorithms and compare their graphs.
    Diff {
        #[arg(long)]
        angles: PathBuf,
    },
    /// Time both algorithms over a range of sizes.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "original,improved")]
        algorithms: Vec<Algorithm>,
        #[arg(long, default_value = "random")]
        family: Family,
    },
}

enum Failure {
    /// Exit 1: the input was read but did not pass.
    Rejected(anyhow::Error),
    /// Exit 2: bad arguments, unreadable or malformed files.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_poly(path: &Path) -> anyhow::Result<Polygon> {
    io::parse_poly(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_angles(path: &Path) -> anyhow::Result<AngleData> {
    io::parse_angles(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn rejected(e: OracleError) -> Failure {
    Failure::Rejected(anyhow!(e))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Generate { n, seed, out } => {
            if n < 3 {
                return Err(Failure::Usage(anyhow!("--n must be at least 3, got {n}")));
            }
            let p = random_simple_polygon(n, seed).map_err(rejected)?;
            write(&out, &io::write_poly(&p))?;
        }
        Command::Measure { poly, out } => {
            let p = load_poly(&poly)?;
            let data = measure_angles(&p).map_err(rejected)?;
            write(&out, &io::write_angles(&data))?;
        }
        Command::Reconstruct { angles, algorithm, out_graph, out_poly } => {
            let data = load_angles(&angles)?;
            let assessment = assess(&data);
            if !assessment.report.is_consistent() {
                return Err(Failure::Rejected(anyhow!("{}", assessment.report)));
            }
            let graph = match algorithm {
                Algorithm::Improved => assessment.graph().expect("consistent").clone(),
                Algorithm::Original => reconstruct(&data, algorithm)
                    .map_err(|e| Failure::Rejected(anyhow!("Inconsistent: {e}")))?
                    .graph,
            };
            write(&out_graph, &io::write_graph(&graph))?;
            if let Some(path) = out_poly {
                write(&path, &io::write_poly(assessment.polygon.as_ref().expect("consistent")))?;
            }
        }
        Command::Verify { poly, tol } => {
            let p = load_poly(&poly)?;
            let report = harness::verify(&p, tol).map_err(rejected)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Rejected(anyhow!("verification failed")));
            }
        }
        Command::Diff { angles } => {
            let data = load_angles(&angles)?;
            let report = harness::diff(&data).map_err(|e| Failure::Rejected(anyhow!("Inconsistent: {e}")))?;
            println!("original candidate_checks: {}", report.original.candidate_checks);
            println!("improved candidate_checks: {}", report.improved.candidate_checks);
            if !report.matched() {
                return Err(Failure::Rejected(anyhow!(
                    "DIVERGENCE on edges {:?}",
                    report.divergence
                )));
            }
            let cmp = if report.original.candidate_checks >= report.improved.candidate_checks {
                "≥"
            } else {
                "<"
            };
            println!("MATCH, original checks {cmp} improved checks ({} edges)", report.edge_count);
        }
        Command::Bench { sizes, repeats, seed, csv, algorithms, family } => {
            let records = harness::bench(&sizes, repeats, seed, &algorithms, family)
                .map_err(|e| Failure::Rejected(anyhow!(e)))?;
            for r in &records {
                log::info!("{} n={} {:.3}s checks={}", r.algorithm, r.n, r.wall_time, r.candidate_checks);
            }
            write(&csv, &harness::write_csv(&records))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Error };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
