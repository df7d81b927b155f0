//! Thin CLI over the library: sweeps, validation, and figure presets.
//! Every flag can also be set through an `MMWAVE_ASEP_*` environment
//! variable; flags win when both are present.

use clap::{Parser, Subcommand};
use mmwave_asep::sweep::{preset, run_sweep, validate, write_csv, SweepSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mmwave-asep", version, about = "Average symbol error probability of downlink mmWave cellular networks: analytic pipeline with a Monte Carlo cross-check")]
struct Cli {
    /// Base RNG seed (overrides the config value).
    #[arg(long, global = true, env = "MMWAVE_ASEP_SEED")]
    seed: Option<u64>,
    /// Monte Carlo trials per grid point (overrides the config value).
    #[arg(long, global = true, env = "MMWAVE_ASEP_TRIALS")]
    trials: Option<u64>,
    /// Worker threads (default: one per core). Results do not depend on this.
    #[arg(long, global = true, env = "MMWAVE_ASEP_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one sweep from a JSON config and write a CSV.
    Sweep {
        /// Flat JSON config; omitted fields take defaults.
        #[arg(long, env = "MMWAVE_ASEP_CONFIG")]
        config: Option<PathBuf>,
        /// Output CSV path.
        #[arg(long, env = "MMWAVE_ASEP_OUT", default_value = "sweep.csv")]
        out: PathBuf,
    },
    /// Run analytic vs Monte Carlo on a grid and report z-scores;
    /// exits nonzero if any point misses by more than 3 standard errors.
    Validate {
        /// Flat JSON config; omitted fields take defaults.
        #[arg(long, env = "MMWAVE_ASEP_CONFIG")]
        config: Option<PathBuf>,
        /// Optional CSV path for the row-level report.
        #[arg(long, env = "MMWAVE_ASEP_OUT")]
        out: Option<PathBuf>,
    },
    /// Run a named parameter-study preset (fig1..fig4), one CSV per curve.
    Preset {
        /// Preset name: fig1, fig2, fig3, or fig4.
        name: String,
        /// Output stem: curve CSVs land at `<stem>_<label>.csv`.
        #[arg(long, env = "MMWAVE_ASEP_OUT")]
        out: Option<PathBuf>,
    },
}

fn load_spec(config: Option<&Path>) -> mmwave_asep::Result<SweepSpec> {
    match config {
        Some(p) => SweepSpec::from_path(p),
        None => Ok(SweepSpec::default()),
    }
}

fn apply_overrides(spec: &mut SweepSpec, seed: Option<u64>, trials: Option<u64>) {
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(t) = trials {
        spec.trials = t;
    }
}

/// `stem.csv` + `label` → `stem_label.csv`.
fn curve_path(stem: &Path, label: &str) -> PathBuf {
    let ext = stem.extension().map(|e| e.to_owned());
    let base = stem.file_stem().unwrap_or(stem.as_os_str()).to_owned();
    let mut name = base;
    name.push("_");
    name.push(label);
    let mut path = stem.with_file_name(name);
    if let Some(e) = ext {
        path.set_extension(e);
    }
    path
}

fn write_rows(path: &Path, rows: &[mmwave_asep::sweep::SweepRow]) -> mmwave_asep::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(std::io::BufWriter::new(file), rows)?;
    Ok(())
}

fn run(cli: Cli) -> mmwave_asep::Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        // Ignore the error when a pool already exists (e.g. under a harness).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match cli.cmd {
        Cmd::Sweep { config, out } => {
            let mut spec = load_spec(config.as_deref())?;
            apply_overrides(&mut spec, cli.seed, cli.trials);
            let rows = run_sweep(&spec)?;
            write_rows(&out, &rows)?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { config, out } => {
            let mut spec = load_spec(config.as_deref())?;
            apply_overrides(&mut spec, cli.seed, cli.trials);
            let report = validate(&spec)?;
            for row in &report.rows {
                let z = row
                    .z_score
                    .map(|z| format!("{z:+.3}"))
                    .unwrap_or_else(|| "n/a".to_string());
                println!(
                    "{}={:<12} analytic={} mc={} z={}",
                    row.axis,
                    row.value,
                    row.asep_analytic
                        .map(|v| format!("{v:.6e}"))
                        .unwrap_or_else(|| "failed".to_string()),
                    row.asep_mc
                        .map(|v| format!("{v:.6e}"))
                        .unwrap_or_else(|| "failed".to_string()),
                    z,
                );
            }
            if let Some(path) = out {
                write_rows(&path, &report.rows)?;
            }
            if report.passed() {
                println!("validation passed: max |z| = {:.3}", report.max_abs_z);
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "validation FAILED at grid indices {:?}: max |z| = {:.3}",
                    report.failing, report.max_abs_z
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Cmd::Preset { name, out } => {
            let curves = preset(&name)?;
            let stem = out.unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
            for mut spec in curves {
                apply_overrides(&mut spec, cli.seed, cli.trials);
                let rows = run_sweep(&spec)?;
                let path = curve_path(&stem, &spec.label);
                write_rows(&path, &rows)?;
                println!("wrote {} rows to {}", rows.len(), path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
