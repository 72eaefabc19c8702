use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use corrclust::bayes::{posterior, Hypothesis};
use corrclust::distance::distance_matrix;
use corrclust::harness::{sigma_grid, sweep, with_workers, SweepConfig};
use corrclust::io::{read_csv, render_svg, write_csv, FigureSpec};
use corrclust::synthesis::{generate, Distribution, NoiseSpec, Seed};
use corrclust::{Algorithm, Error, Partition, Pattern};

#[derive(Parser)]
#[command(name = "corrclust", version, about = "Correlation-distance clustering accuracy workbench")]
struct Cli {
    /// Worker threads for Monte Carlo loops (results do not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster the columns of a CSV file and print the partition.
    Cluster {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Write one synthetic data set drawn from a ground-truth pattern.
    Generate {
        #[arg(long)]
        pattern: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "normal")]
        dist: Distribution,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Error rate against noise level for one algorithm and pattern.
    Sweep {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        pattern: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "normal")]
        dist: Distribution,
        /// Grid sigma = j/steps, j = 1..=steps.
        #[arg(long, default_value_t = 30)]
        sigma_steps: usize,
        /// Explicit comma-separated sigma grid; overrides --sigma-steps.
        #[arg(long, value_delimiter = ',')]
        sigmas: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Posterior probability of each observed result's pattern.
    Posterior {
        #[arg(long)]
        input: PathBuf,
        /// ALGO:PARTITION, e.g. `pam:{X1,X2}|{X3,X4}|{X5,X6}`; give it once per result.
        #[arg(long = "result", required = true)]
        results: Vec<String>,
        /// Comma-separated priors, one per result; uniform by default.
        #[arg(long, value_delimiter = ',')]
        priors: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cluster { algo, k, input } => {
            let m = read_csv(&input)?;
            if k == 0 || k > m.p() {
                return Err(Failure::Usage(format!("--k must lie in 1..={}", m.p())));
            }
            let d = distance_matrix(&m)?;
            let part = algo.cluster(&d, k)?;
            println!("{}", part.render(m.col_names()));
        }
        Command::Generate {
            pattern,
            n,
            dist,
            sigma,
            seed,
            out,
        } => {
            let pattern = Pattern::new(pattern).map_err(|e| Failure::Usage(e.to_string()))?;
            let noise = NoiseSpec::new(dist, sigma).map_err(|e| Failure::Usage(e.to_string()))?;
            let m = generate(&pattern, n, noise, Seed(seed))?;
            write_csv(&m, &out)?;
        }
        Command::Sweep {
            algo,
            pattern,
            n,
            dist,
            sigma_steps,
            sigmas,
            iters,
            seed,
            k,
            out,
            svg,
        } => {
            if sigmas.is_none() && sigma_steps == 0 {
                return Err(Failure::Usage("--sigma-steps must be >= 1".into()));
            }
            let config = SweepConfig {
                sigma_grid: sigmas.unwrap_or_else(|| sigma_grid(sigma_steps)),
                iterations: iters,
                k,
                ..SweepConfig::new(algo, pattern, n, dist, seed)
            };
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let result = with_workers(cli.workers, || sweep(&config))??;
            std::fs::write(&out, result.to_csv()).map_err(Error::from)?;
            if let Some(path) = svg {
                let fig = FigureSpec {
                    title: format!("{algo}, pattern {pattern}, n={n}, {dist}"),
                    series: vec![(algo.to_string(), result)],
                };
                std::fs::write(path, render_svg(&fig)?).map_err(Error::from)?;
            }
        }
        Command::Posterior {
            input,
            results,
            priors,
            iters,
            seed,
            out,
        } => {
            let m = read_csv(&input)?;
            let mut observed = Vec::with_capacity(results.len());
            for spec in &results {
                let (algo, text) = spec
                    .split_once(':')
                    .ok_or_else(|| Failure::Usage(format!("--result `{spec}` is not ALGO:PARTITION")))?;
                let algo: Algorithm = algo.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                let part = Partition::parse(text, m.col_names()).map_err(|e| Failure::Usage(e.to_string()))?;
                observed.push((algo, part));
            }
            let priors = priors.unwrap_or_else(|| vec![1.0 / observed.len() as f64; observed.len()]);
            if priors.len() != observed.len() {
                return Err(Failure::Usage(format!(
                    "{} priors for {} results",
                    priors.len(),
                    observed.len()
                )));
            }
            let hypotheses: Vec<Hypothesis> = observed
                .iter()
                .zip(&priors)
                .map(|((_, c), &prior)| Hypothesis {
                    pattern: c.clone(),
                    prior,
                })
                .collect();
            let report = with_workers(cli.workers, || posterior(&observed, &hypotheses, &m, iters, Seed(seed)))??;
            print!("{}", report.to_text(m.col_names()));
            if let Some(path) = out {
                std::fs::write(path, report.to_csv()).map_err(Error::from)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
