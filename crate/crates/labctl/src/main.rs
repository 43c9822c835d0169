use clap::{Parser, Subcommand};
use labctl::fss::{crossing_analysis, AnalysisOptions};
use labctl::stats::{ensemble_stats, GroupKey};
use labctl::sweep::{run_sweep, SweepOptions};
use labctl::{read_rows, LabError, SweepConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Sweeps, analysis and checks for the noisy-transduction simulators.
#[derive(Parser)]
#[command(name = "iesb", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run (or resume) the sweep described by a TOML config.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// Root for relative output directories.
        #[arg(long, env = "IESB_OUTPUT_ROOT")]
        output_root: Option<PathBuf>,
    },
    /// Locate the finite-size crossing of one observable; prints JSON.
    Analyze {
        /// A data.csv file or a sweep directory.
        dataset: PathBuf,
        #[arg(long)]
        observable: String,
        /// Comma-separated sizes; all sizes by default.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        bootstrap: usize,
        /// Also fit a scaling collapse.
        #[arg(long)]
        collapse: bool,
    },
    /// Per-group means and standard errors over realizations; prints CSV.
    Stats {
        dataset: PathBuf,
        /// Comma-separated grouping columns.
        #[arg(long, value_delimiter = ',', default_value = "engine,L,T,p_or_nu,layer,observable")]
        by: Vec<String>,
    },
    /// Run the invariant and oracle checks.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write the symmetric-group tables as JSON.
    Tables {
        #[arg(long, default_value = "tables")]
        out: PathBuf,
    },
}

fn run(cmd: Cmd) -> Result<ExitCode, LabError> {
    match cmd {
        Cmd::Sweep { config, threads, output_root } => {
            let cfg = SweepConfig::parse_config(&config)?;
            let rep = run_sweep(&cfg, &SweepOptions { threads, output_root })?;
            println!(
                "{}: {} units computed, {} reused, {} rows",
                rep.dir.display(),
                rep.computed,
                rep.reused,
                rep.rows
            );
        }
        Cmd::Analyze { dataset, observable, sizes, seed, bootstrap, collapse } => {
            let rows = read_rows(&dataset)?;
            let fit = crossing_analysis(&rows, &observable, &AnalysisOptions { sizes, seed, bootstrap, collapse })?;
            println!("{}", serde_json::to_string_pretty(&fit).expect("fit serializes"));
        }
        Cmd::Stats { dataset, by } => {
            let keys = by.iter().map(|k| GroupKey::from_column(k)).collect::<Result<Vec<_>, _>>()?;
            let table = ensemble_stats(&read_rows(&dataset)?, &keys)?;
            for w in &table.warnings {
                eprintln!("warning: {w}");
            }
            let mut out = csv::Writer::from_writer(std::io::stdout());
            let mut header: Vec<&str> = keys.iter().map(|k| k.column()).collect();
            header.extend(["mean", "stderr", "count"]);
            let io = |e: csv::Error| LabError::Validation(e.to_string());
            out.write_record(&header).map_err(io)?;
            for g in &table.groups {
                let mut rec = g.key.clone();
                rec.extend([g.mean.to_string(), g.stderr.to_string(), g.count.to_string()]);
                out.write_record(&rec).map_err(io)?;
            }
            out.flush().map_err(|e| LabError::Validation(e.to_string()))?;
        }
        Cmd::Verify { seed } => {
            let checks = labctl::verify::run_verify(seed);
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if checks.iter().any(|c| !c.passed) {
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Tables { out } => {
            for f in labctl::tables::write_tables(&out)? {
                println!("{}", f.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
