//! Command-line surface: buildups, RF/offset scans, closed-form comparison
//! reports, and dataset reproduction, driven by plain-text config files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 unknown subcommand.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use spincp::config::parse_config;
use spincp::constants::{hz, to_hz};
use spincp::csvio;
use spincp::powder::{generate_orientations, OrientationScheme};
use spincp::presets::{self, FigureId, PresetError};
use spincp::scenarios::{
    compare_aht_vs_brute, run_buildup, scan_offset, scan_rf, ComparisonOutcome, ScenarioConfig,
    ScenarioError,
};

#[derive(Parser)]
#[command(
    name = "spincp",
    version,
    about = "Three-spin cross-polarization simulator for liquids and spinning solids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory for CSV files.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,

    /// Override the RNG seed from the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the integrator step, seconds.
    #[arg(long, global = true)]
    step: Option<f64>,

    /// Override the orientation grid, e.g. 233x8 (Fibonacci scheme).
    #[arg(long, global = true)]
    orientations: Option<String>,

    /// Worker threads for ensemble and grid evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a brute-force buildup and write buildup.csv.
    Buildup {
        #[arg(long)]
        config: PathBuf,
    },
    /// Scan the RF amplitude; writes scan_rf.csv.
    ScanRf {
        #[arg(long)]
        config: PathBuf,
        /// Scan grid start:stop:count in Hz (default: +-30% around the
        /// designated-pair shift difference, 61 points).
        #[arg(long)]
        scan: Option<String>,
    },
    /// Scan the rare-spin offset; writes scan_offset.csv.
    ScanOffset {
        #[arg(long)]
        config: PathBuf,
        /// Scan grid start:stop:count in Hz (default: +-2 shift differences,
        /// 41 points).
        #[arg(long)]
        scan: Option<String>,
    },
    /// Compare the closed-form trajectory against brute force at match.
    CompareAht {
        #[arg(long)]
        config: PathBuf,
    },
    /// Re-emit the simulation datasets behind one of the shipped presets
    /// (fig2, fig3, fig4, fig5, s1, s2, s4).
    Reproduce { id: String },
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => m,
        }
    }
}

fn classify(err: ScenarioError) -> CliError {
    match &err {
        ScenarioError::Propagate(_)
        | ScenarioError::ConservationViolated(_)
        | ScenarioError::Member(_) => CliError::Numerical(err.to_string()),
        _ => CliError::Config(err.to_string()),
    }
}

fn classify_preset(err: PresetError) -> CliError {
    match err {
        PresetError::Scenario(e) => classify(e),
        PresetError::Csv(ref e) => match e {
            csvio::CsvError::NonFinite(_, _) => CliError::Numerical(err.to_string()),
            _ => CliError::Config(err.to_string()),
        },
        other => CliError::Config(other.to_string()),
    }
}

fn load_config(path: &Path, cli: &Cli) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut config = parse_config(&text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
        // regenerate seed-dependent orientation sets
        if let Some(set) = &config.orientations {
            if let Some(rest) = set.scheme.strip_prefix("random:") {
                if let Some(n) = rest.split(':').next().and_then(|n| n.parse::<usize>().ok()) {
                    config.orientations = Some(
                        generate_orientations(OrientationScheme::UniformRandom, n, 1, seed)
                            .map_err(|e| CliError::Config(e.to_string()))?,
                    );
                }
            }
        }
    }
    if let Some(step) = cli.step {
        if !(step > 0.0) {
            return Err(CliError::Config(format!("--step must be positive, got {step}")));
        }
        config.step_override = Some(step);
    }
    if let Some(spec) = &cli.orientations {
        let (n, m) = spec
            .split_once('x')
            .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
            .ok_or_else(|| {
                CliError::Config(format!("--orientations expects NxM, got {spec:?}"))
            })?;
        config.orientations = Some(
            generate_orientations(OrientationScheme::FibonacciGamma, n, m, config.seed)
                .map_err(|e| CliError::Config(e.to_string()))?,
        );
    }
    config.validate().map_err(classify)?;
    Ok(config)
}

fn parse_scan(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Config(format!("--scan expects start:stop:count in Hz, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count < 1 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![hz(start)]);
    }
    Ok((0..count)
        .map(|k| hz(start + (stop - start) * k as f64 / (count - 1) as f64))
        .collect())
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Buildup { config } => {
            let config = load_config(config, cli)?;
            ensure_out_dir(&cli.out_dir)?;
            let ts = run_buildup(&config).map_err(classify)?;
            let path = cli.out_dir.join("buildup.csv");
            csvio::write_series(&ts, &path)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            if let Some((max, at)) = ts.max_of("Ix") {
                println!("max Ix = {max:.6} at tau = {at:.6} s");
            }
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::ScanRf { config, scan } => {
            let config = load_config(config, cli)?;
            ensure_out_dir(&cli.out_dir)?;
            let grid = match scan {
                Some(spec) => parse_scan(spec)?,
                None => {
                    let delta = config.delta().abs();
                    (0..61)
                        .map(|k| delta * (0.7 + 0.6 * k as f64 / 60.0))
                        .collect()
                }
            };
            let profile = scan_rf(&config, &grid).map_err(classify)?;
            let path = cli.out_dir.join("scan_rf.csv");
            csvio::write_profile(&profile, "omega1_hz", &path)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            println!(
                "argmax omega1 = {:.3} Hz (max-over-tau figure of merit)",
                to_hz(profile.argmax)
            );
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::ScanOffset { config, scan } => {
            let config = load_config(config, cli)?;
            ensure_out_dir(&cli.out_dir)?;
            let grid = match scan {
                Some(spec) => parse_scan(spec)?,
                None => {
                    let delta = config.delta().abs();
                    (0..41)
                        .map(|k| delta * (-2.0 + 4.0 * k as f64 / 40.0))
                        .collect()
                }
            };
            let profile = scan_offset(&config, &grid).map_err(classify)?;
            let path = cli.out_dir.join("scan_offset.csv");
            csvio::write_profile(&profile, "i_offset_hz", &path)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::CompareAht { config } => {
            let config = load_config(config, cli)?;
            ensure_out_dir(&cli.out_dir)?;
            let report = compare_aht_vs_brute(&config).map_err(classify)?;
            let brute_path = cli.out_dir.join("compare_brute.csv");
            csvio::write_series(&report.brute, &brute_path)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            println!("wrote {}", brute_path.display());
            if let Some(analytic) = &report.analytic {
                let path = cli.out_dir.join("compare_analytic.csv");
                csvio::write_series(analytic, &path)
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
                println!("wrote {}", path.display());
            }
            match &report.outcome {
                ComparisonOutcome::DegenerateK { message, .. } => {
                    println!("comparison not asserted: {message}");
                }
                ComparisonOutcome::Compared(_) => {
                    println!("{}", presets::summarize_comparison(&report));
                }
            }
            Ok(())
        }
        Command::Reproduce { id } => {
            let id: FigureId = id.parse().map_err(|e: PresetError| CliError::Config(e.to_string()))?;
            ensure_out_dir(&cli.out_dir)?;
            let manifest = presets::reproduce_figure(id, &cli.out_dir).map_err(classify_preset)?;
            println!(
                "wrote {} files under {}",
                manifest.entries.len(),
                manifest.dir.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument => 4,
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("warning: could not set thread count: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
