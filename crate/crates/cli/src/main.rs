//! Command-line front door: verification suites, eigen reports, wave
//! classification and simulation, and potential transforms.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! usage or configuration errors.

// index loops mirror the tensor formulas
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod checks;
mod parse;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rmpkit_core::{
    classify_mode, eigendecompose, evolve, field_from_rmp, j4_diagnostic, measure_diagnostics,
    transform_rmp, Error, GridField, LorentzMap, ModeInit, ModeKind, Rmp, SimConfig, WaveModeKind,
    WaveVector, WaveVectorSampler, C64,
};

use checks::SuiteConfig;
use report::{
    complex_json, complex_list_json, timestamp_unix, toolkit_version, VerifyReport, SCHEMA,
};

#[derive(Parser)]
#[command(
    name = "rmpkit",
    version,
    about = "Spectral verification toolkit for three-potential electrodynamics"
)]
struct Cli {
    /// Plain-text key = value file supplying defaults (keys: seed, samples,
    /// tolerance, format, output); command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity, eigenstructure, filter, transform and field check.
    Verify(VerifyArgs),
    /// Eigenvalue decomposition of the contraction matrix at a wavevector.
    Eigen(EigenArgs),
    /// Plane-wave tools: mode classification and the periodic-grid evolver.
    #[command(subcommand)]
    Wave(WaveCommand),
    /// Transform a three-potential and report round-trip residuals.
    Transform(TransformArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for every sampled check (env RMPKIT_SEED overrides the default).
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per check (must be at least 1).
    #[arg(long)]
    samples: Option<usize>,
    /// Replace every check's pinned tolerance with this value.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format (only json is defined for verify).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct EigenArgs {
    /// Wavevector components, comma-separated; `5i` marks an imaginary value.
    #[arg(long, conflicts_with = "random")]
    n: Option<String>,
    /// Sample random regular wavevectors instead of using --n.
    #[arg(long)]
    random: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WaveCommand {
    /// Classify an amplitude/wavevector pair against the two solution families.
    Classify(WaveClassifyArgs),
    /// Evolve configured modes on a periodic grid and write the time series.
    Simulate(WaveSimulateArgs),
}

#[derive(Args)]
struct WaveClassifyArgs {
    /// Three amplitude components.
    #[arg(long)]
    a: String,
    /// Four wavevector components.
    #[arg(long)]
    n: String,
    /// Propagation speed used for the temporal-source diagnostic.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WaveSimulateArgs {
    /// Initial condition: transverse, longitudinal, or superposition.
    #[arg(long, default_value = "transverse")]
    mode: String,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Grid points per axis (power of two, at least 8).
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    /// Propagation speed carried by the wave equation.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Record every this many steps.
    #[arg(long, default_value_t = 1)]
    sample_every: usize,
    /// Time-series CSV path.
    #[arg(long, default_value = "wave_series.csv")]
    output: PathBuf,
    /// JSON summary path (stdout always gets a copy).
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    /// Boost as axis,rapidity (for example 1,0.3).
    #[arg(long, conflicts_with = "rotate")]
    boost: Option<String>,
    /// Rotation as axis,angle (radians).
    #[arg(long)]
    rotate: Option<String>,
    /// Three potential components.
    #[arg(long)]
    a: String,
    /// Four wavevector components.
    #[arg(long)]
    n: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Defaults loaded from a plain-text key = value file.
#[derive(Default)]
struct FileDefaults {
    seed: Option<u64>,
    samples: Option<usize>,
    tolerance: Option<f64>,
    format: Option<String>,
    output: Option<PathBuf>,
}

fn load_defaults(path: &PathBuf) -> Result<FileDefaults> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut out = FileDefaults::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "seed" => out.seed = Some(value.parse().context("bad seed")?),
            "samples" => out.samples = Some(value.parse().context("bad samples")?),
            "tolerance" => out.tolerance = Some(value.parse().context("bad tolerance")?),
            "format" => out.format = Some(value.to_string()),
            "output" => out.output = Some(PathBuf::from(value)),
            other => bail!("unknown config key {other:?}"),
        }
    }
    Ok(out)
}

fn env_seed() -> Option<u64> {
    std::env::var("RMPKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
}

fn resolve_seed(flag: Option<u64>, file: &FileDefaults) -> u64 {
    flag.or(env_seed()).or(file.seed).unwrap_or(0)
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(path) = output {
        fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    println!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = match cli.config.as_ref().map(load_defaults).transpose() {
        Ok(d) => d.unwrap_or_default(),
        Err(err) => {
            eprintln!("config error: {err:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args, &defaults),
        Command::Eigen(args) => cmd_eigen(args, &defaults),
        Command::Wave(WaveCommand::Classify(args)) => cmd_wave_classify(args),
        Command::Wave(WaveCommand::Simulate(args)) => cmd_wave_simulate(args),
        Command::Transform(args) => cmd_transform(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(args: VerifyArgs, defaults: &FileDefaults) -> Result<ExitCode> {
    let samples = args.samples.or(defaults.samples).unwrap_or(100);
    if samples == 0 {
        bail!("samples must be at least 1");
    }
    let tolerance = args.tolerance.or(defaults.tolerance);
    if let Some(t) = tolerance {
        if !(t > 0.0) {
            bail!("tolerance must be positive, got {t}");
        }
    }
    if let Some(format) = args.format.as_deref().or(defaults.format.as_deref()) {
        if format != "json" {
            bail!("verify only emits json, got format {format:?}");
        }
    }
    let seed = resolve_seed(args.seed, defaults);
    let suite = SuiteConfig {
        seed,
        samples,
        tolerance_override: tolerance,
    };
    let results = checks::run_suite(&suite);
    for check in &results {
        eprintln!(
            "{} {:<32} max_residual {:.3e}  tolerance {:.1e}",
            if check.pass { "PASS" } else { "FAIL" },
            check.check_id,
            check.max_residual,
            check.tolerance
        );
    }
    let report = VerifyReport::new(seed, samples, results);
    let value = serde_json::to_value(&report)?;
    emit(&value, args.output.as_ref().or(defaults.output.as_ref()))?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn eigen_record(n: &WaveVector) -> Result<Value> {
    let report = eigendecompose(n).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut multiplicities = BTreeMap::new();
    for (lambda, count) in report.multiplicities.iter().enumerate() {
        multiplicities.insert(lambda.to_string(), *count);
    }
    let cluster_residuals: BTreeMap<String, f64> = report
        .clusters
        .iter()
        .map(|c| (c.lambda.to_string(), c.max_residual))
        .collect();
    Ok(json!({
        "n": complex_list_json(n.components()),
        "normalized_eigenvalues": complex_list_json(&report.normalized_eigenvalues),
        "multiplicities": multiplicities,
        "max_cluster_deviation": report.max_cluster_deviation,
        "max_basis_residual": report.basis_residuals.iter().cloned().fold(0.0, f64::max),
        "cluster_residuals": cluster_residuals,
    }))
}

fn cmd_eigen(args: EigenArgs, defaults: &FileDefaults) -> Result<ExitCode> {
    let seed = resolve_seed(args.seed, defaults);
    let records: Vec<Value> = if args.random {
        let samples = args.samples.or(defaults.samples).unwrap_or(1);
        if samples == 0 {
            bail!("samples must be at least 1");
        }
        let mut sampler = WaveVectorSampler::new(seed);
        (0..samples)
            .map(|_| eigen_record(&sampler.mixed()))
            .collect::<Result<_>>()?
    } else {
        let raw = args
            .n
            .as_deref()
            .context("either --n or --random is required")?;
        let n = parse::parse_wavevector(raw)?;
        vec![eigen_record(&n)?]
    };
    let value = json!({
        "schema": SCHEMA,
        "suite": "eigen",
        "toolkit_version": toolkit_version(),
        "seed": seed,
        "timestamp_unix": timestamp_unix(),
        "records": records,
    });
    emit(&value, args.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_wave_classify(args: WaveClassifyArgs) -> Result<ExitCode> {
    let a = parse::parse_complex_list::<3>(&args.a)?;
    let n = parse::parse_wavevector(&args.n)?;
    let class = classify_mode(&a, &n);
    let kind = match class.kind {
        ModeKind::Transverse => "Transverse",
        ModeKind::Longitudinal => "Longitudinal",
        ModeKind::NonSolution => "NonSolution",
    };
    let value = json!({
        "schema": SCHEMA,
        "suite": "wave-classify",
        "toolkit_version": toolkit_version(),
        "timestamp_unix": timestamp_unix(),
        "a": complex_list_json(&a),
        "n": complex_list_json(n.components()),
        "kind": kind,
        "residual_norm": class.residual_norm,
        "spatial_projection": complex_json(class.spatial_projection),
        "n_dot_n": complex_json(class.n_dot_n),
        "j4": complex_json(j4_diagnostic(&a, &n, args.c)),
    });
    emit(&value, args.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn simulate_modes(mode: &str) -> Result<Vec<ModeInit>> {
    let transverse = ModeInit {
        amplitude: [C64::default(), rmpkit_core::c64(1.0, 0.0), C64::default()],
        mode: [1, 0, 0],
        kind: WaveModeKind::Transverse,
    };
    let longitudinal = ModeInit {
        amplitude: [rmpkit_core::c64(0.7, 0.0), C64::default(), C64::default()],
        mode: [1, 0, 0],
        kind: WaveModeKind::Longitudinal,
    };
    Ok(match mode {
        "transverse" => vec![transverse],
        "longitudinal" => vec![longitudinal],
        "superposition" => vec![transverse, longitudinal],
        other => {
            bail!("unknown mode {other:?} (expected transverse, longitudinal or superposition)")
        }
    })
}

fn cmd_wave_simulate(args: WaveSimulateArgs) -> Result<ExitCode> {
    let cfg = SimConfig {
        grid: args.grid,
        dx: args.dx,
        speed_of_light: args.c,
        dt: args.dt,
        steps: args.steps,
        modes: simulate_modes(&args.mode)?,
        sample_every: args.sample_every,
    };
    let initial = GridField::from_config(&cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
    let evolution = evolve(&initial, &cfg).map_err(|e| anyhow::anyhow!("{e}"))?;

    let mut csv = String::from(
        "step,t,mode_id,a1_re,a1_im,a2_re,a2_im,a3_re,a3_im,phase_speed,e_norm,b_norm\n",
    );
    for snap in &evolution.snapshots {
        for record in &snap.modes {
            csv.push_str(&format!(
                "{},{},{}:{}:{},{},{},{},{},{},{},{},{},{}\n",
                snap.step,
                snap.t,
                record.mode[0],
                record.mode[1],
                record.mode[2],
                record.amplitude[0][0],
                record.amplitude[0][1],
                record.amplitude[1][0],
                record.amplitude[1][1],
                record.amplitude[2][0],
                record.amplitude[2][1],
                record.phase_speed,
                record.e_norm,
                record.b_norm
            ));
        }
    }
    fs::write(&args.output, csv)
        .with_context(|| format!("cannot write {}", args.output.display()))?;

    let diagnostics =
        measure_diagnostics(&evolution.snapshots).map_err(|e| anyhow::anyhow!("{e}"))?;
    let value = json!({
        "schema": SCHEMA,
        "suite": "wave-simulate",
        "toolkit_version": toolkit_version(),
        "timestamp_unix": timestamp_unix(),
        "mode": args.mode,
        "grid": args.grid,
        "dx": args.dx,
        "dt": args.dt,
        "c": args.c,
        "steps": args.steps,
        "series_path": args.output.display().to_string(),
        "per_mode": serde_json::to_value(&diagnostics.per_mode)?,
        "max_e_norm": diagnostics.max_e_norm,
        "max_b_norm": diagnostics.max_b_norm,
        "max_divergence_norm": diagnostics.max_divergence_norm,
    });
    emit(&value, args.summary.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_transform(args: TransformArgs) -> Result<ExitCode> {
    let (map, map_desc) = match (&args.boost, &args.rotate) {
        (Some(raw), None) => {
            let (axis, rapidity) = parse::parse_axis_value(raw)?;
            (
                LorentzMap::boost(axis, rapidity),
                json!({"kind": "boost", "axis": axis, "parameter": rapidity}),
            )
        }
        (None, Some(raw)) => {
            let (axis, angle) = parse::parse_axis_value(raw)?;
            (
                LorentzMap::rotation(axis, angle),
                json!({"kind": "rotation", "axis": axis, "parameter": angle}),
            )
        }
        (None, None) => (LorentzMap::identity(), json!({"kind": "identity"})),
        _ => bail!("pass either --boost or --rotate, not both"),
    };
    let a = parse::parse_complex_list::<3>(&args.a)?;
    let n = parse::parse_wavevector(&args.n)?;
    let rmp = Rmp::new(a, n);

    let transformed = match transform_rmp(&map, &rmp) {
        Ok(v) => v,
        Err(Error::ZeroTemporalComponent(mag)) => {
            bail!("transformed wavevector has vanishing temporal component (|n4| = {mag:.3e})")
        }
        Err(e) => bail!("{e}"),
    };
    let back = transform_rmp(&map.inverse(), &transformed).map_err(|e| anyhow::anyhow!("{e}"))?;
    let round_trip: f64 = (0..3)
        .map(|r| (back.a[r] - rmp.a[r]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let f_direct = map.apply_rank2(&field_from_rmp(&rmp).f);
    let f_hat = field_from_rmp(&transformed).f;
    let mut commutation: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            commutation += (f_direct[i][j] - f_hat[i][j]).norm_sqr();
        }
    }
    let value = json!({
        "schema": SCHEMA,
        "suite": "transform",
        "toolkit_version": toolkit_version(),
        "timestamp_unix": timestamp_unix(),
        "map": map_desc,
        "a": complex_list_json(&a),
        "n": complex_list_json(n.components()),
        "a_hat": complex_list_json(&transformed.a),
        "n_hat": complex_list_json(transformed.n.components()),
        "round_trip_residual": round_trip,
        "commutation_residual": commutation.sqrt(),
    });
    emit(&value, args.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}
