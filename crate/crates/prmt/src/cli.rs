//! Command-line front end: sample matrices, print spectra, tabulate curves,
//! run experiments and figure presets, and self-verify.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on runtime failures.
//! When the `PRMT_SEED` environment variable is set it overrides the
//! effective seed of every subcommand that uses one.

use crate::analytic::{AnalyticCurve, CurveName};
use crate::ensembles::{build_dense, sample, EnsembleKind, FirstRow, SamplerConfig};
use crate::error::{Error, Result};
use crate::harness::{
    self, fmt_f64, parse_config, persist, run, ExperimentConfig, FigurePreset,
};
use crate::matrix::SymMatrix;
use crate::spectra::{eig_symmetric, reduce_spectrum, ReducedSpectrum, DEFAULT_EIG_TOL};
use crate::verify;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "prmt",
    version,
    about = "Patterned random matrix toolkit: constrained ensembles, symmetry-reduced spectra, spacing statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample patterned matrices and print them as CSV blocks on stdout
    Sample(SampleArgs),
    /// Print the full and symmetry-reduced spectrum of a sampled or loaded matrix
    Spectrum(SpectrumArgs),
    /// Tabulate an analytic density or spacing curve as x,pdf rows
    Curve(CurveArgs),
    /// Run one experiment from a key=value config file and persist its outputs
    Experiment(ExperimentArgs),
    /// Run the preset experiments reproducing one reference figure
    Figure(FigureArgs),
    /// Run the oracle-equivalence and curve-normalization suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Ensemble kind: rc-zeros, rc-soft, sym-circulant, pst
    #[arg(long)]
    kind: String,
    /// Softening width of the constrained entries (rc-soft only)
    #[arg(long)]
    sigma_c: Option<f64>,
    /// Matrix dimension (odd, >= 3)
    #[arg(long)]
    n: usize,
    /// Measure parameter A of the matrix weight exp(-A tr H^2)
    #[arg(long, alias = "A", default_value_t = 1.0)]
    a: f64,
    /// Base RNG seed (one substream per matrix index)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of matrices to emit
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Ensemble kind: rc-zeros, rc-soft, sym-circulant, pst
    #[arg(long)]
    kind: String,
    /// Softening width of the constrained entries (rc-soft only)
    #[arg(long)]
    sigma_c: Option<f64>,
    /// Matrix dimension when sampling (odd, >= 3)
    #[arg(long)]
    n: Option<usize>,
    /// Measure parameter A when sampling
    #[arg(long, alias = "A", default_value_t = 1.0)]
    a: f64,
    /// Base RNG seed when sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Substream index of the sampled matrix
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Read the matrix from a CSV file instead of sampling
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Curve name (for example rc-spacing or pst-spacing-scaled)
    #[arg(long)]
    name: CurveName,
    /// Measure parameter A (ignored by scaled and baseline curves)
    #[arg(long, alias = "A", default_value_t = 1.0)]
    a: f64,
    /// Left end of the tabulation grid
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    /// Right end of the tabulation grid
    #[arg(long, default_value_t = 4.0)]
    to: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 101)]
    points: usize,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Path to a key=value experiment config (a persisted manifest replays)
    #[arg(long)]
    config: PathBuf,
    /// Output directory (files land under <out>/<experiment-name>/)
    #[arg(long, default_value = "./runs")]
    out: PathBuf,
    /// Override the worker count from the config
    #[arg(long)]
    workers: Option<usize>,
    /// Overwrite an existing experiment directory
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Figure id: fig1, fig2, fig3 or fig4
    #[arg(long)]
    id: String,
    /// Output directory (files land under <out>/<id>/<experiment-name>/)
    #[arg(long, default_value = "./runs")]
    out: PathBuf,
    /// Override the preset seeds
    #[arg(long)]
    seed: Option<u64>,
    /// Override the preset worker counts
    #[arg(long)]
    workers: Option<usize>,
    /// Overwrite existing experiment directories
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Matrices per (ensemble, dimension) case in the oracle suite
    #[arg(long, default_value_t = 100)]
    instances: usize,
}

/// Parses argv and executes; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version print to stdout and exit 0; usage errors exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var("PRMT_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::Config(format!("PRMT_SEED must be an unsigned integer, got {v:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::Config(format!("PRMT_SEED is not readable: {e}"))),
    }
}

fn effective_seed(flag: u64) -> Result<u64> {
    Ok(env_seed()?.unwrap_or(flag))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn matrix_csv(m: &SymMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_f64(v)).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let kind = EnsembleKind::from_label(&args.kind, args.sigma_c)?;
    let seed = effective_seed(args.seed)?;
    let cfg = SamplerConfig::new(kind, args.n, args.a, seed)?;
    let mut out = String::new();
    for idx in 0..args.count {
        if idx > 0 {
            out.push('\n');
        }
        out.push_str(&matrix_csv(&sample(&cfg, idx as u64).dense));
    }
    print!("{out}");
    Ok(())
}

fn parse_matrix_file(path: &PathBuf) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            row.push(field.trim().parse::<f64>().map_err(|_| {
                Error::Structure(format!(
                    "{}: line {}: not a number: {field:?}",
                    path.display(),
                    lineno + 1
                ))
            })?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<()> {
    let kind = EnsembleKind::from_label(&args.kind, args.sigma_c)?;
    let pm = match &args.matrix {
        Some(path) => {
            let rows = parse_matrix_file(path)?;
            let parsed = SymMatrix::from_rows(&rows)?;
            let first_row = FirstRow::new(parsed.row(0).to_vec())?;
            let rebuilt = build_dense(kind, &first_row)?;
            if rebuilt != parsed {
                return Err(Error::Structure(format!(
                    "{}: matrix does not follow the {} pattern of its first row",
                    path.display(),
                    kind.label()
                )));
            }
            crate::ensembles::PatternedMatrix {
                kind,
                first_row,
                dense: rebuilt,
            }
        }
        None => {
            let n = args.n.ok_or_else(|| {
                Error::Config("either --matrix or --n must be given".into())
            })?;
            let seed = effective_seed(args.seed)?;
            let cfg = SamplerConfig::new(kind, n, args.a, seed)?;
            sample(&cfg, args.stream)
        }
    };
    let full = eig_symmetric(&pm.dense, DEFAULT_EIG_TOL)?;
    let fmt_list = |v: &[f64]| {
        v.iter()
            .map(|&x| fmt_f64(x))
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("full,{}", fmt_list(full.values()));
    match reduce_spectrum(&pm, DEFAULT_EIG_TOL)? {
        ReducedSpectrum::Rc { trivial, positives } => {
            println!("trivial,{}", fmt_f64(trivial));
            println!("positives,{}", fmt_list(&positives));
        }
        ReducedSpectrum::Parity { even, odd } => {
            println!("even,{}", fmt_list(&even));
            println!("odd,{}", fmt_list(&odd));
        }
    }
    Ok(())
}

fn cmd_curve(args: CurveArgs) -> Result<()> {
    if args.points == 0 {
        return Err(Error::Config("points must be >= 1".into()));
    }
    if !(args.from.is_finite() && args.to.is_finite() && args.from <= args.to) {
        return Err(Error::Config(format!(
            "invalid grid [{}, {}]",
            args.from, args.to
        )));
    }
    let curve = AnalyticCurve::new(args.name, args.a)?;
    let mut out = String::new();
    for i in 0..args.points {
        let x = if args.points == 1 {
            args.from
        } else {
            args.from + (args.to - args.from) * i as f64 / (args.points - 1) as f64
        };
        out.push_str(&format!("{},{}\n", fmt_f64(x), fmt_f64(curve.pdf(x)?)));
    }
    print!("{out}");
    Ok(())
}

fn report_result(result: &harness::ExperimentResult, files: &[PathBuf]) {
    println!("experiment,{}", result.config.name);
    println!("count,{}", result.summary.count);
    println!("mean,{}", fmt_f64(result.summary.mean));
    for overlay in &result.overlays {
        match overlay.a {
            Some(a) => println!(
                "ks,{},{} (A = {})",
                overlay.name.label(),
                fmt_f64(overlay.ks),
                fmt_f64(a)
            ),
            None => println!("ks,{},{}", overlay.name.label(), fmt_f64(overlay.ks)),
        }
    }
    for f in files {
        println!("wrote,{}", f.display());
    }
    eprintln!(
        "[{}] finished in {:.2}s",
        result.config.name, result.wall_seconds
    );
}

fn run_and_persist(config: &ExperimentConfig, out: &std::path::Path, force: bool) -> Result<()> {
    let result = run(config)?;
    let files = persist(&result, out, force)?;
    report_result(&result, &files);
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Error::io(&args.config, e))?;
    let mut config = parse_config(&text)?;
    if let Some(w) = args.workers {
        config.workers = w;
    }
    if let Some(seed) = env_seed()? {
        config.seed = seed;
    }
    config.validate()?;
    run_and_persist(&config, &args.out, args.force)
}

fn figure_presets(id: &str) -> Result<Vec<FigurePreset>> {
    match id {
        "fig1" => Ok(vec![FigurePreset::Fig1Left, FigurePreset::Fig1Right]),
        "fig2" => Ok(vec![FigurePreset::Fig2Left, FigurePreset::Fig2Right]),
        "fig3" => Ok(vec![FigurePreset::Fig3]),
        "fig4" => Ok(vec![FigurePreset::Fig4]),
        other => Err(Error::Config(format!(
            "unknown figure id {other:?} (expected fig1, fig2, fig3 or fig4)"
        ))),
    }
}

fn cmd_figure(args: FigureArgs) -> Result<()> {
    let presets = figure_presets(&args.id)?;
    let out = args.out.join(&args.id);
    let seed_override = match env_seed()? {
        Some(s) => Some(s),
        None => args.seed,
    };
    for preset in presets {
        for mut config in harness::preset(preset)? {
            if let Some(seed) = seed_override {
                config.seed = seed;
            }
            if let Some(w) = args.workers {
                config.workers = w;
            }
            run_and_persist(&config, &out, args.force)?;
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    if args.instances == 0 {
        return Err(Error::Config("instances must be >= 1".into()));
    }
    let mut reports = verify::oracle_equivalence(args.instances, 0xA11CE, 1e-10);
    reports.extend(verify::normalization_suite());
    let mut failures = 0usize;
    for r in &reports {
        println!(
            "{} {} :: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        if !r.passed {
            failures += 1;
        }
    }
    println!(
        "verify: {}/{} checks passed",
        reports.len() - failures,
        reports.len()
    );
    if failures > 0 {
        return Err(Error::Numerical(format!("{failures} verification checks failed")));
    }
    Ok(())
}
